"""Golden-value generator for the core crate's fixtures.

Every value is computed with mpmath at 60 significant digits and written with
25 significant digits, so the CSV files are independent of the Rust code they
check. Re-run from the repository root:

    python3 tools/generate_fixtures.py crates/core/fixtures
"""
import os
import sys

import mpmath as mp

DPS = 60
mp.mp.dps = DPS
OUT_DIGITS = 25


def fmt(v):
    return mp.nstr(mp.mpf(v), OUT_DIGITS, min_fixed=-5, max_fixed=0)


def write(path, header, rows):
    with open(path, "w", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for r in rows:
            fh.write(",".join(r) + "\n")


def theta_z(out):
    ts = ["0", "1", "5", "10", "14.134725141734693790457251983562",
          "17.845599540410860816826338412519", "20", "25", "29.5", "30", "35", "50", "75", "100",
          "150", "200", "500", "1000", "2000", "5000", "10000", "30000",
          "100000", "1000000"]
    rows = []
    for s in ts:
        t = mp.mpf(s)
        th = mp.siegeltheta(t)
        z = mp.siegelz(t)
        rows.append([s, fmt(th), fmt(z), str(DPS)])
    write(os.path.join(out, "theta_z.csv"), ["t", "theta", "z", "source_digits"], rows)


def gram(out):
    rows = []
    for nu in [1, 2, 3, 5, 10, 50, 100, 500, 1000, 5000, 10000, 100000]:
        rows.append([str(nu), fmt(mp.grampoint(nu)), str(DPS)])
    write(os.path.join(out, "gram_points.csv"), ["nu", "t", "source_digits"], rows)


def bessel_zeros(out):
    rows = []
    for n in list(range(1, 11)) + [50, 100, 101, 1000]:
        rows.append([str(n), fmt(mp.besseljzero(1, n)), str(DPS)])
    write(os.path.join(out, "bessel_zeros.csv"), ["n", "mu", "source_digits"], rows)


def bessel_values(out):
    xs = ["0", "0.001", "0.5", "1", "2.5", "3.8317059702075123156144358863082",
          "5", "7.5", "8", "10", "12", "15", "20", "25", "26", "30", "50",
          "100", "500", "1000", "2000.5", "10000", "100000", "1000000"]
    rows = []
    for s in xs:
        x = mp.mpf(s)
        rows.append([s, fmt(mp.besselj(0, x)), fmt(mp.besselj(1, x)), str(DPS)])
    write(os.path.join(out, "bessel_values.csv"), ["x", "j0", "j1", "source_digits"], rows)


def prime_pi(out):
    rows = []
    for t in ["2", "10", "10.5", "100", "1000", "7919", "10000", "100000", "1000000"]:
        rows.append([t, str(int(mp.primepi(mp.mpf(t))))])
    write(os.path.join(out, "prime_pi.csv"), ["t", "pi"], rows)


def zeta_zeros(out):
    rows = []
    for n in [1, 2, 3, 10, 30, 50, 80]:
        rows.append([str(n), fmt(mp.im(mp.zetazero(n))), str(DPS)])
    write(os.path.join(out, "zeta_zeros.csv"), ["n", "gamma", "source_digits"], rows)
    rows = []
    for lo, hi in [(100, 200), (1000, 1010)]:
        rows.append([str(lo), str(hi), str(mp.nzeros(hi) - mp.nzeros(lo))])
    write(os.path.join(out, "zero_counts.csv"), ["t_lo", "t_hi", "count"], rows)


if __name__ == "__main__":
    out = sys.argv[1] if len(sys.argv) > 1 else "crates/core/fixtures"
    os.makedirs(out, exist_ok=True)
    theta_z(out)
    gram(out)
    bessel_zeros(out)
    bessel_values(out)
    prime_pi(out)
    zeta_zeros(out)
