#!/usr/bin/env python3
# -*- coding: utf-8 -*-
'''
Demo sectorially flat function and weight surgery using pyultradiff

Latest version can be found at https://github.com/letuananh/pyultradiff

@author: Le Tuan Anh <tuananh.ke@gmail.com>
@license: MIT
'''

import math

import numpy as np

import pyultradiff
from pyultradiff import GevreyPower, FlatFunction, SectorPoint, build_surgery_weight
from pyultradiff.flat import check_flat_bounds, write_sector_grid
from pyultradiff.surgery import check_surgery


# ------------------------------------------------------------------------------
# Development information
# ------------------------------------------------------------------------------
print("-" * 60)
print(f"pyultradiff {pyultradiff.__version__} demo flat functions")
print("-" * 60)
print()

# ------------------------------------------------------------------------------
# A function flat at 0 on a sector of opening pi gamma
# ------------------------------------------------------------------------------
# 1. omega(t) = t^(1/4) has an integrable conjugate kernel
f = FlatFunction(GevreyPower(4), 1.0, 0.5)
print(f"Built {f}")

# 2. bounds on a few points of the sector
points = [SectorPoint(r, t) for r in (0.01, 0.1, 1.0) for t in (-0.9 * math.pi, 0.0, 0.9 * math.pi)]
print(check_flat_bounds(f, points))

# 3. plot-ready table of |G| and arg G
write_sector_grid(f, np.geomspace(1e-3, 10, 25), np.linspace(-0.9, 0.9, 7) * math.pi,
                  'output/sector.csv', overwrite=True)

# ------------------------------------------------------------------------------
# Surgery: a weight with gamma = 1.5 between t^(1/2) and t^(3/4)
# ------------------------------------------------------------------------------
sw = build_surgery_weight(GevreyPower(2), 'power:a=0.75', 1.5)
print(f"Breakpoints: {sw.breakpoints[:6]} ...")
print(check_surgery(sw))
sw.write_csv('output/surgery.csv', overwrite=True)
