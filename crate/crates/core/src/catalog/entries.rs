//! The 123 entries, one per line: id and the weights on `T_j`, `M_i`, `F_k`.

use super::Slot::{self, F, M, T};

pub(super) static ENTRIES: &[(&str, &[(Slot, i64)])] = &[
    ("1.1", &[(T(1), 1), (T(8), 1), (T(2), -1), (T(5), -1)]),
    ("1.2", &[(T(1), 1), (T(8), 1), (T(3), -1), (T(6), -1)]),
    ("1.3", &[(T(1), 1), (T(8), 1), (T(4), -1), (T(7), -1)]),
    ("1.4", &[(T(1), 2), (T(8), 1), (T(2), -1), (T(4), -1), (T(6), -1)]),
    ("1.5", &[(T(1), 1), (T(8), 2), (T(3), -1), (T(5), -1), (T(7), -1)]),
    ("2.1", &[(T(1), 1), (T(8), 1), (M(1), 1)]),
    ("2.2", &[(T(1), 1), (T(8), 1), (M(2), 1)]),
    ("2.3", &[(T(1), 3), (T(8), 2), (M(3), 1), (T(2), -1), (T(6), -2)]),
    ("2.4", &[(T(1), 2), (T(8), 3), (M(3), 1), (T(5), -1), (T(7), -2)]),
    ("2.5", &[(T(1), 2), (T(8), 2), (M(3), 1), (T(6), -1), (T(7), -1)]),
    ("2.6", &[(T(1), 3), (T(8), 2), (M(4), 1), (T(2), -2), (T(6), -1)]),
    ("2.7", &[(T(1), 2), (T(8), 2), (M(4), 1), (T(2), -1), (T(7), -1)]),
    ("2.8", &[(T(1), 2), (T(8), 3), (M(4), 1), (T(3), -1), (T(7), -2)]),
    ("2.9", &[(T(1), 2), (T(8), 2), (M(5), 1), (T(2), -1), (T(3), -1)]),
    ("2.10", &[(T(1), 3), (T(8), 2), (M(5), 1), (T(2), -2), (T(4), -1)]),
    ("2.11", &[(T(1), 2), (T(8), 3), (M(5), 1), (T(3), -2), (T(7), -1)]),
    ("2.12", &[(T(1), 3), (T(8), 2), (M(6), 1), (T(2), -1), (T(4), -2)]),
    ("2.13", &[(T(1), 2), (T(8), 2), (M(6), 1), (T(3), -1), (T(4), -1)]),
    ("2.14", &[(T(1), 2), (T(8), 3), (M(6), 1), (T(3), -2), (T(5), -1)]),
    ("2.15", &[(T(1), 2), (T(8), 3), (M(7), 1), (T(3), -1), (T(5), -2)]),
    ("2.16", &[(T(1), 2), (T(8), 2), (M(7), 1), (T(4), -1), (T(5), -1)]),
    ("2.17", &[(T(1), 3), (T(8), 2), (M(7), 1), (T(4), -2), (T(6), -1)]),
    ("2.18", &[(T(1), 3), (T(8), 2), (M(8), 1), (T(4), -1), (T(6), -2)]),
    ("2.19", &[(T(1), 2), (T(8), 2), (M(8), 1), (T(5), -1), (T(6), -1)]),
    ("2.20", &[(T(1), 2), (T(8), 3), (M(8), 1), (T(5), -2), (T(7), -1)]),
    ("3.1", &[(T(1), 2), (T(8), 2), (M(3), 1), (M(6), 1)]),
    ("3.2", &[(T(1), 2), (T(8), 2), (M(4), 1), (M(7), 1)]),
    ("3.3", &[(T(1), 2), (T(8), 2), (M(5), 1), (M(8), 1)]),
    ("3.4", &[(T(1), 3), (T(8), 4), (M(3), 1), (M(4), 1), (T(7), -3)]),
    ("3.5", &[(T(1), 5), (T(8), 4), (M(3), 1), (M(5), 2), (T(2), -3)]),
    ("3.6", &[(T(1), 4), (T(8), 5), (M(3), 2), (M(5), 1), (T(7), -3)]),
    ("3.7", &[(T(1), 4), (T(8), 5), (M(3), 1), (M(7), 2), (T(5), -3)]),
    ("3.8", &[(T(1), 5), (T(8), 4), (M(3), 2), (M(7), 1), (T(6), -3)]),
    ("3.9", &[(T(1), 4), (T(8), 3), (M(3), 1), (M(8), 1), (T(6), -3)]),
    ("3.10", &[(T(1), 4), (T(8), 3), (M(4), 1), (M(5), 1), (T(2), -3)]),
    ("3.11", &[(T(1), 5), (T(8), 4), (M(4), 2), (M(6), 1), (T(2), -3)]),
    ("3.12", &[(T(1), 4), (T(8), 5), (M(4), 1), (M(6), 2), (T(3), -3)]),
    ("3.13", &[(T(1), 5), (T(8), 4), (M(4), 1), (M(8), 2), (T(6), -3)]),
    ("3.14", &[(T(1), 4), (T(8), 5), (M(4), 2), (M(8), 1), (T(7), -3)]),
    ("3.15", &[(T(1), 3), (T(8), 4), (M(5), 1), (M(6), 1), (T(3), -3)]),
    ("3.16", &[(T(1), 4), (T(8), 5), (M(5), 2), (M(7), 1), (T(3), -3)]),
    ("3.17", &[(T(1), 5), (T(8), 4), (M(5), 1), (M(7), 2), (T(4), -3)]),
    ("3.18", &[(T(1), 4), (T(8), 3), (M(6), 1), (M(7), 1), (T(4), -3)]),
    ("3.19", &[(T(1), 5), (T(8), 4), (M(6), 2), (M(8), 1), (T(4), -3)]),
    ("3.20", &[(T(1), 4), (T(8), 5), (M(6), 1), (M(8), 2), (T(5), -3)]),
    ("3.21", &[(T(1), 3), (T(8), 4), (M(7), 1), (M(8), 1), (T(5), -3)]),
    ("4.1", &[(T(1), 3), (T(8), 3), (M(3), 1), (M(5), 1), (M(7), 1)]),
    ("4.2", &[(T(1), 3), (T(8), 3), (M(4), 1), (M(6), 1), (M(8), 1)]),
    ("5.1", &[(T(1), 2), (T(8), 1), (T(2), -2), (F(2), 1)]),
    ("5.2", &[(T(1), 1), (T(8), 2), (T(3), -2), (F(3), 1)]),
    ("5.3", &[(T(1), 2), (T(8), 1), (T(4), -2), (F(6), 1)]),
    ("5.4", &[(T(1), 1), (T(8), 2), (T(5), -2), (F(1), 1)]),
    ("5.5", &[(T(1), 2), (T(8), 1), (T(6), -2), (F(4), 1)]),
    ("5.6", &[(T(1), 1), (T(8), 2), (T(7), -2), (F(5), 1)]),
    ("5.7", &[(T(1), 3), (T(8), 2), (T(2), -2), (T(4), -2), (F(3), 1)]),
    ("5.8", &[(T(1), 3), (T(8), 2), (T(2), -2), (T(6), -2), (F(5), 1)]),
    ("5.9", &[(T(1), 2), (T(8), 3), (T(3), -2), (T(5), -2), (F(6), 1)]),
    ("5.10", &[(T(1), 2), (T(8), 3), (T(3), -2), (T(7), -2), (F(2), 1)]),
    ("5.11", &[(T(1), 3), (T(8), 2), (T(4), -2), (T(6), -2), (F(1), 1)]),
    ("5.12", &[(T(1), 2), (T(8), 3), (T(5), -2), (T(7), -2), (F(4), 1)]),
    ("6.1", &[(T(1), 2), (T(8), 2), (M(3), 1), (T(2), -1), (F(3), 1)]),
    ("6.2", &[(T(1), 2), (T(8), 2), (M(3), 1), (T(5), -1), (F(6), 1)]),
    ("6.3", &[(T(1), 5), (T(8), 4), (M(3), 2), (T(6), -4), (F(1), 1)]),
    ("6.4", &[(T(1), 4), (T(8), 3), (M(3), 2), (T(6), -2), (F(6), 1)]),
    ("6.5", &[(T(1), 4), (T(8), 5), (M(3), 2), (T(7), -4), (F(2), 1)]),
    ("6.6", &[(T(1), 3), (T(8), 4), (M(3), 2), (T(7), -2), (F(3), 1)]),
    ("6.7", &[(T(1), 5), (T(8), 4), (M(4), 2), (T(2), -4), (F(3), 1)]),
    ("6.8", &[(T(1), 4), (T(8), 3), (M(4), 2), (T(2), -2), (F(6), 1)]),
    ("6.9", &[(T(1), 2), (T(8), 2), (M(4), 1), (T(3), -1), (F(6), 1)]),
    ("6.10", &[(T(1), 2), (T(8), 2), (M(4), 1), (T(6), -1), (F(1), 1)]),
    ("6.11", &[(T(1), 3), (T(8), 4), (M(4), 2), (T(7), -2), (F(1), 1)]),
    ("6.12", &[(T(1), 4), (T(8), 5), (M(4), 2), (T(7), -4), (F(4), 1)]),
    ("6.13", &[(T(1), 4), (T(8), 3), (M(5), 2), (T(2), -2), (F(4), 1)]),
    ("6.14", &[(T(1), 5), (T(8), 4), (M(5), 2), (T(2), -4), (F(5), 1)]),
    ("6.15", &[(T(1), 3), (T(8), 4), (M(5), 2), (T(3), -2), (F(1), 1)]),
    ("6.16", &[(T(1), 4), (T(8), 5), (M(5), 2), (T(3), -4), (F(6), 1)]),
    ("6.17", &[(T(1), 2), (T(8), 2), (M(5), 1), (T(4), -1), (F(1), 1)]),
    ("6.18", &[(T(1), 2), (T(8), 2), (M(5), 1), (T(7), -1), (F(4), 1)]),
    ("6.19", &[(T(1), 2), (T(8), 2), (M(6), 1), (T(2), -1), (F(5), 1)]),
    ("6.20", &[(T(1), 4), (T(8), 5), (M(6), 2), (T(3), -4), (F(2), 1)]),
    ("6.21", &[(T(1), 3), (T(8), 4), (M(6), 2), (T(3), -2), (F(5), 1)]),
    ("6.22", &[(T(1), 5), (T(8), 4), (M(6), 2), (T(4), -4), (F(1), 1)]),
    ("6.23", &[(T(1), 4), (T(8), 3), (M(6), 2), (T(4), -2), (F(4), 1)]),
    ("6.24", &[(T(1), 2), (T(8), 2), (M(6), 1), (T(5), -1), (F(4), 1)]),
    ("6.25", &[(T(1), 2), (T(8), 2), (M(7), 1), (T(3), -1), (F(2), 1)]),
    ("6.26", &[(T(1), 4), (T(8), 3), (M(7), 2), (T(4), -2), (F(2), 1)]),
    ("6.27", &[(T(1), 5), (T(8), 4), (M(7), 2), (T(4), -4), (F(3), 1)]),
    ("6.28", &[(T(1), 4), (T(8), 5), (M(7), 2), (T(5), -4), (F(4), 1)]),
    ("6.29", &[(T(1), 3), (T(8), 4), (M(7), 2), (T(5), -2), (F(5), 1)]),
    ("6.30", &[(T(1), 2), (T(8), 2), (M(7), 1), (T(6), -1), (F(5), 1)]),
    ("6.31", &[(T(1), 2), (T(8), 2), (M(8), 1), (T(4), -1), (F(3), 1)]),
    ("6.32", &[(T(1), 3), (T(8), 4), (M(8), 2), (T(5), -2), (F(3), 1)]),
    ("6.33", &[(T(1), 4), (T(8), 5), (M(8), 2), (T(5), -4), (F(6), 1)]),
    ("6.34", &[(T(1), 4), (T(8), 3), (M(8), 2), (T(6), -2), (F(2), 1)]),
    ("6.35", &[(T(1), 5), (T(8), 4), (M(8), 2), (T(6), -4), (F(5), 1)]),
    ("6.36", &[(T(1), 2), (T(8), 2), (M(8), 1), (T(7), -1), (F(2), 1)]),
    ("7.1", &[(T(1), 6), (T(8), 5), (M(3), 2), (M(4), 2), (F(6), 3)]),
    ("7.2", &[(T(1), 7), (T(8), 8), (M(3), 2), (M(5), 4), (F(1), 3)]),
    ("7.3", &[(T(1), 8), (T(8), 7), (M(3), 4), (M(5), 2), (F(6), 3)]),
    ("7.4", &[(T(1), 8), (T(8), 7), (M(3), 2), (M(7), 4), (F(2), 3)]),
    ("7.5", &[(T(1), 7), (T(8), 8), (M(3), 4), (M(7), 2), (F(3), 3)]),
    ("7.6", &[(T(1), 5), (T(8), 6), (M(3), 2), (M(8), 2), (F(3), 3)]),
    ("7.7", &[(T(1), 5), (T(8), 6), (M(4), 2), (M(5), 2), (F(1), 3)]),
    ("7.8", &[(T(1), 7), (T(8), 8), (M(4), 4), (M(6), 2), (F(1), 3)]),
    ("7.9", &[(T(1), 8), (T(8), 7), (M(4), 2), (M(6), 4), (F(4), 3)]),
    ("7.10", &[(T(1), 7), (T(8), 8), (M(4), 2), (M(8), 4), (F(3), 3)]),
    ("7.11", &[(T(1), 8), (T(8), 7), (M(4), 4), (M(8), 2), (F(6), 3)]),
    ("7.12", &[(T(1), 6), (T(8), 5), (M(5), 2), (M(6), 2), (F(4), 3)]),
    ("7.13", &[(T(1), 8), (T(8), 7), (M(5), 4), (M(7), 2), (F(4), 3)]),
    ("7.14", &[(T(1), 7), (T(8), 8), (M(5), 2), (M(7), 4), (F(5), 3)]),
    ("7.15", &[(T(1), 5), (T(8), 6), (M(6), 2), (M(7), 2), (F(5), 3)]),
    ("7.16", &[(T(1), 8), (T(8), 7), (M(6), 2), (M(8), 4), (F(2), 3)]),
    ("7.17", &[(T(1), 7), (T(8), 8), (M(6), 4), (M(8), 2), (F(5), 3)]),
    ("7.18", &[(T(1), 6), (T(8), 5), (M(7), 2), (M(8), 2), (F(2), 3)]),
    ("8.1", &[(T(1), 1), (T(8), 1), (F(1), 1), (F(2), 1)]),
    ("8.2", &[(T(1), 1), (T(8), 1), (F(3), 1), (F(4), 1)]),
    ("8.3", &[(T(1), 1), (T(8), 1), (F(5), 1), (F(6), 1)]),
    ("9.1", &[(T(1), 3), (T(8), 3), (M(3), 2), (F(3), 1), (F(6), 1)]),
    ("9.2", &[(T(1), 3), (T(8), 3), (M(4), 2), (F(1), 1), (F(6), 1)]),
    ("9.3", &[(T(1), 3), (T(8), 3), (M(5), 2), (F(1), 1), (F(4), 1)]),
    ("9.4", &[(T(1), 3), (T(8), 3), (M(6), 2), (F(4), 1), (F(5), 1)]),
    ("9.5", &[(T(1), 3), (T(8), 3), (M(7), 2), (F(2), 1), (F(5), 1)]),
    ("9.6", &[(T(1), 3), (T(8), 3), (M(8), 2), (F(2), 1), (F(3), 1)]),
];
