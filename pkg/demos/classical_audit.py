"""Classical common causes: one verified certificate, one impossibility.

First a textbook four-block space where an explicit event screens off the
correlation, then the four-atom space that no event can complete. Run:

    python3 demos/classical_audit.py
"""

from ccbench import ClassicalSpace, classical_closedness_audit, classical_verify_cc

# Eight atoms = three bits (C, A, B). C is fair; given C both A and B fire
# with probability 0.8, given not-C with 0.2, independently. That makes C a
# perfect common cause of the A-B correlation.
w = [0.32, 0.08, 0.08, 0.02, 0.02, 0.08, 0.08, 0.32]
space = ClassicalSpace(w)
A = space.as_mask([0, 1, 4, 5])
B = space.as_mask([0, 2, 4, 6])
C = space.as_mask([0, 1, 2, 3])

report = classical_verify_cc(space, A, B, C)
print("four-block space:")
print(f"  correlation = {report.correlation:.4f}")
print(f"  screening residuals ({report.residual_screen_C:.3g}, {report.residual_screen_Cperp:.3g})")
print(f"  relevance margins ({report.margin_A:.3f}, {report.margin_B:.3f})")
print(f"  verified: {report.verified}")

# Now the witness of incompleteness: (0.4, 0.1, 0.1, 0.4) on four atoms.
# The audit enumerates every correlated pair of logically independent
# events and every candidate cause.
audit = classical_closedness_audit(ClassicalSpace([0.4, 0.1, 0.1, 0.4]))
print("\nfour-atom space (0.4, 0.1, 0.1, 0.4):")
print(f"  correlated pairs: {audit.n_correlated_pairs}")
print(f"  pairs with a nontrivial common cause: {audit.n_covered}")
print(f"  common-cause closed: {audit.closed}")
print("  first few uncovered pairs (atom index sets):")
for a, b in audit.uncovered[:4]:
    print(f"    A = {sorted(a)}, B = {sorted(b)}")
