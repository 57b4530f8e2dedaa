# XXZ / ASM verifier
# Exact reconstruction of the Delta = -1/2 ground state and its alternating-sign-matrix numbers
