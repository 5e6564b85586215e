"""Taylor coefficients of the Riemann-Siegel kernel Psi(1/2 + x).

Psi(p) = cos(2 pi (p^2 - p - 1/16)) / cos(2 pi p). With x = p - 1/2 this is
-cos(2 pi x^2 - 5 pi / 8) / cos(2 pi x), an even entire function. The series
is obtained by exact formal division at high working precision and printed as
a Rust array of the even coefficients a_0, a_2, a_4, ...
"""
import mpmath as mp

mp.mp.dps = 120
DEG = 100  # highest even power kept


def cos_series_of_quadratic(deg):
    # cos(2 pi x^2 - 5 pi/8) = cos(5pi/8) cos(2pi x^2) + sin(5pi/8) sin(2pi x^2)
    c = [mp.mpf(0)] * (deg + 1)
    ca, sa = mp.cos(5 * mp.pi / 8), mp.sin(5 * mp.pi / 8)
    k = 0
    while 2 * k <= deg:
        # (2 pi x^2)^k / k!
        term = (2 * mp.pi) ** k / mp.factorial(k)
        if k % 2 == 0:
            c[2 * k] += ca * term * (-1) ** (k // 2)
        else:
            c[2 * k] += sa * term * (-1) ** ((k - 1) // 2)
        k += 1
    return c


def cos_series(deg):
    c = [mp.mpf(0)] * (deg + 1)
    for j in range(0, deg + 1, 2):
        c[j] = (-1) ** (j // 2) * (2 * mp.pi) ** j / mp.factorial(j)
    return c


num = [-v for v in cos_series_of_quadratic(DEG)]
den = cos_series(DEG)
q = [mp.mpf(0)] * (DEG + 1)
for n in range(DEG + 1):
    s = num[n] - sum(den[k] * q[n - k] for k in range(1, n + 1))
    q[n] = s / den[0]

# sanity: compare with direct evaluation
for x in [mp.mpf('0.1'), mp.mpf('0.3'), mp.mpf('0.49')]:
    direct = -mp.cos(2 * mp.pi * x ** 2 - 5 * mp.pi / 8) / mp.cos(2 * mp.pi * x)
    ser = sum(q[j] * x ** j for j in range(DEG + 1))
    assert abs(direct - ser) < mp.mpf(10) ** -60, (x, direct - ser)

evens = [q[j] for j in range(0, DEG + 1, 2)]
# drop coefficients that cannot matter in double precision on |x| <= 1/2
while abs(evens[-1]) * mp.mpf(0.5) ** (2 * (len(evens) - 1)) * 1e6 < 1e-40:
    evens.pop()
print(f"pub(crate) const PSI_EVEN_TAYLOR: [f64; {len(evens)}] = [")
for v in evens:
    print(f"    {mp.nstr(v, 20, min_fixed=0, max_fixed=0)},")
print("];")
