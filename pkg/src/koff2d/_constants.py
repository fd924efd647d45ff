"""Frozen numeric constants shared by the compiled and pure-Python kernels.

Double-double values are (hi, lo) pairs with hi = nearest double and
lo = nearest double to the remainder; generated at 60-digit precision.
"""

# branch crossovers; both backends must use the same values
JY_SMALL_CUT = 6.0    # J/Y: plain-double series below, double-double series above
JY_ASYM_CUT = 18.0    # J/Y: Hankel asymptotic expansion at and above
K_SMALL_CUT = 2.0     # K: plain-double log series below, double-double above
K_ASYM_CUT = 17.0     # K: asymptotic expansion at and above
I_ASYM_CUT = 30.0     # I: ascending series below, asymptotic at and above

I_OVERFLOW_X = 713.0  # I0/I1 exceed the double range just shy of here

_LN2 = (0.6931471805599453, 2.3190468138462996e-17)
_GAMMA = (0.5772156649015329, -4.942915152430645e-18)
_TWO_OVER_PI = (0.6366197723675814, -3.935735335036497e-17)
_PI_OVER_4 = (0.7853981633974483, 3.061616997868383e-17)
_THREE_PI_OVER_4 = (2.356194490192345, 9.184850993605148e-17)

GAMMA = 0.5772156649015329
LN2_MINUS_GAMMA = 0.11593151565841245
