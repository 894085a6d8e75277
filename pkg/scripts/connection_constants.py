"""Print the full connection matrices from the (nu, omega) basis at 0 to the
local bases at x+ and x- for both detour sides and both branch choices."""
import mpmath

from dfinite.repro import connection_matrices

for target in ("x-", "x+"):
    for (side, branch), C in connection_matrices(target).items():
        print(f"{target}  side={side:+d}  branch={branch}")
        for i in range(2):
            print("   ", "  ".join(mpmath.nstr(C.matrix[i, j], 10) for j in range(2)))
