"""Reference values for the moment and normal-CDF tests.

Writes moment_oracles.hpp next to this script. Everything here is computed
independently of the C++ code: mpmath at 50 digits for the normal CDF and
the truncated-Gaussian moments, and scipy's adaptive 2-D quadrature for the
relaxed Poisson tilted distribution.
"""

import pathlib

import mpmath as mp
import numpy as np
from scipy import integrate, special

mp.mp.dps = 50
OUT = pathlib.Path(__file__).with_name("moment_oracles.hpp")


def log_ncdf_table():
    zs = [x / 2 for x in range(-60, 17)] + [-29.9, -17.3, -7.77, -1.234, 0.3, 2.71]
    return [(z, mp.log(mp.ncdf(z))) for z in sorted(zs)]


def trunc_table():
    rows = []
    for sigma in (0.1, 1.0, 10.0):
        for z in np.linspace(-6, 6, 25):
            mu = mp.mpf(float(z)) * sigma
            s2 = mp.mpf(sigma) ** 2
            dens = lambda x: mp.exp(-(x - mu) ** 2 / (2 * s2)) / mp.sqrt(2 * mp.pi * s2)
            # Split at the mode region so the integrator sees the peak.
            pts = [0, max(mu, 0) + 10 * sigma, mp.inf]
            z0 = mp.quad(dens, pts)
            m1 = mp.quad(lambda x: x * dens(x), pts) / z0
            m2 = mp.quad(lambda x: (x - m1) ** 2 * dens(x), pts) / z0
            rows.append((float(mu), sigma * sigma, m1, m2, mp.log(z0)))
    return rows


F_CAVITIES = [(-2.0, 1.0), (-0.5, 0.3), (1.0, 0.5), (2.0, 0.2), (2.5, 0.4)]
Y_CAVITIES = [None, (0.5, 2.0), (2.0, 1.0), (5.0, 4.0), (12.0, 10.0)]


def poisson_case(mf, vf, ycav):
    if ycav is None:
        g = lambda y: 1.0
    else:
        my, vy = ycav
        g = lambda y: np.exp(-(y - my) ** 2 / (2 * vy)) / np.sqrt(2 * np.pi * vy)
    sf = np.sqrt(vf)

    def w(y, f):
        return (np.exp(-(f - mf) ** 2 / (2 * vf)) / np.sqrt(2 * np.pi * vf) * g(y)
                * np.exp(y * f - np.exp(f) - special.gammaln(y + 1)))

    ymax = max(60.0, 4 * np.exp(mf + 6 * sf) + 40)
    lo, hi = mf - 12 * sf, mf + 12 * sf

    def integral(h):
        val, _ = integrate.dblquad(lambda y, f: h(y, f) * w(y, f), lo, hi, 0, ymax,
                                   epsabs=0, epsrel=1e-12)
        return val

    z = integral(lambda y, f: 1.0)
    ey = integral(lambda y, f: y) / z
    vy_ = integral(lambda y, f: (y - ey) ** 2) / z
    ef = integral(lambda y, f: f) / z
    vf_ = integral(lambda y, f: (f - ef) ** 2) / z
    return np.log(z), ey, vy_, ef, vf_


def main():
    lines = ["// Generated by gen_moment_oracles.py; do not edit.", "#pragma once", "",
             "namespace oracle {", ""]
    lines.append("struct LogNormCdf { double z, value; };")
    lines.append("inline constexpr LogNormCdf kLogNormCdf[] = {")
    for z, v in log_ncdf_table():
        lines.append(f"    {{{z!r}, {mp.nstr(v, 20)}}},")
    lines.append("};\n")

    lines.append("struct TruncMoments { double mu, sigma2, mean, variance, log_z; };")
    lines.append("inline constexpr TruncMoments kTruncMoments[] = {")
    for mu, s2, m, v, lz in trunc_table():
        lines.append(f"    {{{mu!r}, {s2!r}, {mp.nstr(m, 20)}, {mp.nstr(v, 20)}, "
                     f"{mp.nstr(lz, 20)}}},")
    lines.append("};\n")

    lines.append("// y cavity variance 0 marks a uniform y cavity.")
    lines.append("struct PoissonTilted { double mf, vf, my, vy, log_z, y_mean, y_var, "
                 "f_mean, f_var; };")
    lines.append("inline constexpr PoissonTilted kPoissonTilted[] = {")
    for mf, vf in F_CAVITIES:
        for ycav in Y_CAVITIES:
            lz, ey, vy, ef, vfo = (float(x) for x in poisson_case(mf, vf, ycav))
            my, vyc = ycav if ycav else (0.0, 0.0)
            lines.append(f"    {{{mf!r}, {vf!r}, {my!r}, {vyc!r}, {lz!r}, {ey!r}, {vy!r}, "
                         f"{ef!r}, {vfo!r}}},")
            print(mf, vf, ycav, lz)
    lines.append("};\n")
    lines.append("}  // namespace oracle")
    OUT.write_text("\n".join(lines) + "\n")


if __name__ == "__main__":
    main()
