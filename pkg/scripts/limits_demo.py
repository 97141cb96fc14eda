#!/usr/bin/env python3
"""Convergence of the subspace-I coefficients to their rational and classical forms."""

from qboundstate import verify as V


def main() -> None:
    x1p, x2p, g = 1.7 + 0.5j, -0.4 + 1.6j, 1.3
    hs = (4e-4, 2e-4, 1e-4, 5e-5)
    data = V.rational_errors(3, 2, x1p, x2p, g, hs, [(0, 1, 0), (1, 0, 1), (2, 0, 1)])
    print("q = 1 + h: |X - X_rational|")
    print("h        " + "  ".join(f"{str(k):>10}" for k in data["errors"]))
    for i, h in enumerate(hs):
        print(f"{h:.1e}  " + "  ".join(f"{data['errors'][k][i]:10.3e}" for k in data["errors"]))

    print("\nlarge g at h = 0.3: g (X - delta) at n = k1 for (k1, k2) = (1, 1)")
    x1, x2 = 1.4 + 0.6j, -0.7 + 1.5j
    gs = (1e2, 1e3, 1e4)
    meas = V.measured_coefficients(3, 2, 1, 1, 0.3, x1, x2, gs)
    p1, p2 = V.classical_point(0.3, gs[0], x1, 3), V.classical_point(0.3, gs[0], x2, 2)
    pred = V.classical_coefficients(3, 2, 1, 1, p1.z_cl, p2.z_cl, 0.3)[1]
    for g_, v in zip(gs, meas[1]):
        print(f"g = {g_:.0e}: {complex(v):.6f}   |diff| = {abs(v - pred):.2e}")
    print(f"prediction: {complex(pred):.6f}")
    print(f"extrapolated 1/g -> 0 from the last two: {complex(V.extrapolate_in_g(meas[1][1:], gs[1:])):.6f}")


if __name__ == "__main__":
    main()
