# Regenerates param_derivs_ref.inc: mpmath numerical derivatives of legenp/legenq
# (type=3) in degree or order, at 30 digits.
#   python3 gen_param_derivs_ref.py > param_derivs_ref.inc
import mpmath as mp

mp.mp.dps = 30

# target, wrt, fixed (re, im), eval_int, sign, z (re, im)
CASES = [
    ("Q", "order", (1.4, 0), 1, -1, (2, 0)),
    ("P", "degree", (0.3, 0), 2, 1, (1.7, 0)),
    ("Q", "degree", (0.6, 0), 2, -1, (2.2, 0)),
    ("P", "order", (0.7, 0), 3, 1, (2, 0)),
    ("Q", "order", (0.7, 0), 2, 1, (1.5, 0.5)),
    ("P", "degree", (0.4, 0), 1, -1, (2, -1)),
    ("Q", "degree", (-1.3, 0), 3, 1, (1.2, 0.3)),
    ("P", "order", (0.8, 0.3), 1, 1, (3, 0)),
    ("Q", "order", (2.6, 0), 4, -1, (5, 0)),
    ("P", "degree", (-0.35, 0), 4, -1, (1.05, 0)),
    ("Q", "degree", (1.9, 0), 0, 1, (3.5, 0)),
    ("P", "order", (3.3, 0), 0, 1, (1.3, 0)),
]


def main():
    print("// Generated by gen_param_derivs_ref.py.")
    for target, wrt, fixed, k, sign, z in CASES:
        fn = mp.legenp if target == "P" else mp.legenq
        fixed_c = mp.mpc(*fixed)
        zc = mp.mpc(*z)
        if wrt == "order":
            nu = fixed_c - mp.mpf(1) / 2
            d = mp.diff(lambda mu: fn(nu, mu, zc, type=3), sign * k)
        else:
            d = mp.diff(lambda nu: fn(nu, fixed_c, zc, type=3), sign * k - mp.mpf(1) / 2)
        d = mp.mpc(d)
        cols = [f"Target::{target}", "Wrt::Order" if wrt == "order" else "Wrt::Degree",
                repr(float(fixed[0])), repr(float(fixed[1])), str(k),
                "Sign::Plus" if sign > 0 else "Sign::Minus", repr(float(z[0])), repr(float(z[1])),
                mp.nstr(d.real, 20, min_fixed=1, max_fixed=0), mp.nstr(d.imag, 20, min_fixed=1, max_fixed=0)]
        print("{" + ", ".join(cols) + "},")


if __name__ == "__main__":
    main()
