"""Pinned reference values shared by the test modules.

Matrices and state tables are transcribed by hand and frozen here; tests
compare implementation output against these, never the other way round.
"""
import math

S = 1.0 / math.sqrt(2.0)
H_ = 0.5
A8 = 1.0 / (2.0 * math.sqrt(2.0))

FOLD_LABELS_14 = (
    "([],0)", "([],1)",
    "([0],0)", "([0],1)",
    "([0,0],0)", "([0,0],1)",
    "([1,0],0)", "([1,0],1)",
    "([1],0)", "([1],1)",
    "([0,1],0)", "([0,1],1)",
    "([1,1],0)", "([1,1],1)",
)

PINNED16_LABELS = FOLD_LABELS_14 + ("([0,0,0],0)", "([0,0,0],1)")

# Permutation: column index -> row index carrying the 1.
CNOT_FOLD_14_PERM = (0, 1, 2, 3, 4, 5, 7, 6, 9, 8, 11, 10, 12, 13)

BELL_FOLD_14 = [
    [1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, S, 0, 0, 0, 0, 0, S, 0, 0, 0, 0, 0],
    [0, 0, 0, S, 0, 0, 0, 0, 0, S, 0, 0, 0, 0],
    [0, 0, 0, 0, H_, 0, H_, 0, 0, 0, H_, 0, H_, 0],
    [0, 0, 0, 0, 0, H_, 0, H_, 0, 0, 0, H_, 0, H_],
    [0, 0, 0, 0, 0, H_, 0, -H_, 0, 0, 0, H_, 0, -H_],
    [0, 0, 0, 0, H_, 0, -H_, 0, 0, 0, H_, 0, -H_, 0],
    [0, 0, 0, S, 0, 0, 0, 0, 0, -S, 0, 0, 0, 0],
    [0, 0, S, 0, 0, 0, 0, 0, -S, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, H_, 0, H_, 0, 0, 0, -H_, 0, -H_],
    [0, 0, 0, 0, H_, 0, H_, 0, 0, 0, -H_, 0, -H_, 0],
    [0, 0, 0, 0, H_, 0, -H_, 0, 0, 0, -H_, 0, H_, 0],
    [0, 0, 0, 0, 0, H_, 0, -H_, 0, 0, 0, -H_, 0, H_],
]

PAIR_LABELS_4 = ("(0,0)", "(0,1)", "(1,0)", "(1,1)")

CNOT_4 = [
    [1, 0, 0, 0],
    [0, 1, 0, 0],
    [0, 0, 0, 1],
    [0, 0, 1, 0],
]

CCNOT_8 = [
    [1, 0, 0, 0, 0, 0, 0, 0],
    [0, 1, 0, 0, 0, 0, 0, 0],
    [0, 0, 1, 0, 0, 0, 0, 0],
    [0, 0, 0, 1, 0, 0, 0, 0],
    [0, 0, 0, 0, 1, 0, 0, 0],
    [0, 0, 0, 0, 0, 1, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 1],
    [0, 0, 0, 0, 0, 0, 1, 0],
]

H_2 = [[S, S], [S, -S]]
X_2 = [[0, 1], [1, 0]]

B_4 = [
    [S, 0, S, 0],
    [0, S, 0, S],
    [0, S, 0, -S],
    [S, 0, -S, 0],
]

ID_KRON_H = [
    [S, S, 0, 0],
    [S, -S, 0, 0],
    [0, 0, S, S],
    [0, 0, S, -S],
]

# Guarded choice of hadamard/negate/hadamard over (control,payload), with
# the control leading and row-major pair order.
COND_4 = [
    [H_, H_, H_, H_],
    [H_, -H_, H_, -H_],
    [0, S, 0, -S],
    [S, 0, -S, 0],
]

XOR_KERNEL = [
    [1, 0, 0, 1],
    [0, 1, 1, 0],
    [0, 1, 1, 0],
    [1, 0, 0, 1],
]

FST_MATRIX = [
    [1, 1, 0, 0],
    [0, 0, 1, 1],
]

NOT_DIFUNCTIONAL = [
    [1, 1, 1, 0],
    [1, 1, 0, 1],
    [1, 0, 1, 1],
    [0, 1, 1, 1],
]

# Fold of the bell step applied to ([1,0,0],1): eight amplitudes of
# magnitude 1/(2 sqrt 2), negative exactly when the leading output bit is 1.
X_STATE = {
    "([0,0,0],1)": A8,
    "([1,0,0],0)": -A8,
    "([0,1,0],0)": A8,
    "([1,1,0],1)": -A8,
    "([0,0,1],0)": A8,
    "([1,0,1],1)": -A8,
    "([0,1,1],1)": A8,
    "([1,1,1],0)": -A8,
}

# The same state pushed through the fold once more.
Y_STATE = {
    "([1,0,0],0)": 0.5,
    "([1,0,0],1)": 0.5,
    "([0,1,1],0)": -0.5,
    "([0,1,1],1)": 0.5,
}

# 16-state circuit input/output rows, with the typed label of each input.
IO_TABLE_16 = [
    ("0000", "0000", "([],0)"),
    ("0001", "0001", "([],1)"),
    ("0010", "0010", "([0],0)"),
    ("0011", "0011", "([0],1)"),
    ("0100", "0100", "([0,0],0)"),
    ("0101", "0101", "([0,0],1)"),
    ("0110", "0111", "([1,0],0)"),
    ("0111", "0110", "([1,0],1)"),
    ("1000", "1001", "([1],0)"),
    ("1001", "1000", "([1],1)"),
    ("1010", "1011", "([0,1],0)"),
    ("1011", "1010", "([0,1],1)"),
    ("1100", "1100", "([1,1],0)"),
    ("1101", "1101", "([1,1],1)"),
    ("1110", "1110", "([0,0,0],0)"),
    ("1111", "1111", "([0,0,0],1)"),
]
