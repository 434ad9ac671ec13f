#!/usr/bin/env python3
from pyultradiff import GevreyPower, check_weight_condition, estimate_gamma

w = GevreyPower(2)
for cond in ('om1', 'om5', 'om_snq'):
    print(check_weight_condition(w, cond))
print(estimate_gamma(w))
