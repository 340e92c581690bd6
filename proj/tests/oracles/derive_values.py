"""Independent oracles used to freeze expected values in the C++ tests.

Run with plain python3 + numpy; nothing here imports the library.
"""
import itertools
import math

import numpy as np


def project_dual_bruteforce(K, x):
    """P_C(x) for C = {y : <y,k> >= 0} by enumerating active sets."""
    K = np.asarray(K, float)
    x = np.asarray(x, float)
    best = None
    for size in range(len(K) + 1):
        for sub in itertools.combinations(range(len(K)), size):
            if sub:
                A = K[list(sub)]
                # minimize |y - x| s.t. A y = 0
                P = np.eye(len(x)) - np.linalg.pinv(A) @ A
                y = P @ x
            else:
                y = x.copy()
            if np.all(K @ y >= -1e-12):
                d = np.linalg.norm(y - x)
                if best is None or d < best[0] - 1e-14:
                    best = (d, y)
    return best[1]


print("project_dual K={(0,-1),(1,1)}, x=(-1,-2):",
      project_dual_bruteforce([[0, -1], [1, 1]], [-1, -2]))
print("project_dual x=(2,1):",
      project_dual_bruteforce([[0, -1], [1, 1]], [2, 1]))

# shape n=1, r=0, target t: minimize int_{-1}^{1} (a t + b - t)^2 dt s.t. b >= |a|
best = None
step = 1e-3
for a in np.arange(-1.0, 1.0 + step / 2, step):
    bs = np.arange(0.0, 1.0 + step / 2, step)
    bs = bs[bs >= abs(a) - 1e-12]
    # int (c t + b)^2 = 2 c^2 / 3 + 2 b^2 with c = a - 1
    vals = 2 * (a - 1) ** 2 / 3 + 2 * bs ** 2
    i = int(np.argmin(vals))
    if best is None or vals[i] < best[0]:
        best = (vals[i], a, bs[i])
print("shape n=1 r=0 grid search (value, a, b):", best)

# null space projector for [1 1]
v = np.array([1.0, -1.0])
print("null projector [1 1]:", np.outer(v, v) / v.dot(v))

# integral moments n=1 on [0,2] via Gauss-Legendre with shifted orthonormal basis
g, w = np.polynomial.legendre.leggauss(10)
a, b = 0.0, 2.0
t = (a + b) / 2 + (b - a) / 2 * g
ww = w * (b - a) / 2
u = (2 * t - a - b) / (b - a)
phi0 = math.sqrt(2 / (b - a)) * math.sqrt(2) / 2 * np.ones_like(u)
phi1 = math.sqrt(2 / (b - a)) * math.sqrt(6) / 2 * u
print("moments n=1 [0,2]:", ww @ phi0, ww @ phi1)

# p_4(1) from the listed closed form
print("p4(1):", 3 * math.sqrt(2) / 16 * (35 - 30 + 3), 3 * math.sqrt(2) / 2)
# p_2'' = (sqrt(10)/4)*6
print("p2'':", math.sqrt(10) / 4 * 6, 3 * math.sqrt(10) / 2)
