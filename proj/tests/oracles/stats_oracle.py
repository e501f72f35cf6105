#!/usr/bin/env python3
"""Reference values for the statistics tests, evaluated with exact fractions
and 30-digit arithmetic.

usage: stats_oracle.py fisher R N Z
       stats_oracle.py pearson X1,X2,... Y1,Y2,...
"""
import sys
from fractions import Fraction

import mpmath

mpmath.mp.dps = 30


def fisher(r, n, z):
    r, z = mpmath.mpf(r), mpmath.mpf(z)
    half = z / mpmath.sqrt(int(n) - 3)
    lower = mpmath.tanh(mpmath.atanh(r) - half)
    upper = mpmath.tanh(mpmath.atanh(r) + half)
    print("lower", lower)
    print("upper", upper)
    print("scaled", (upper - lower) / (2 * z))


def pearson(xs, ys):
    xs = [Fraction(v) for v in xs.split(",")]
    ys = [Fraction(v) for v in ys.split(",")]
    mx, my = sum(xs) / len(xs), sum(ys) / len(ys)
    sxy = sum((a - mx) * (b - my) for a, b in zip(xs, ys))
    sxx = sum((a - mx) ** 2 for a in xs)
    syy = sum((b - my) ** 2 for b in ys)
    print("r^2", sxy * sxy / (sxx * syy))
    print("r", mpmath.mpf(sxy.numerator) / sxy.denominator
          / mpmath.sqrt(mpmath.mpf((sxx * syy).numerator) / (sxx * syy).denominator))


if __name__ == "__main__":
    {"fisher": fisher, "pearson": pearson}[sys.argv[1]](*sys.argv[2:])
