import math

# Ein3 / R^{3,2}
TAU_NULL = 1e-9
TAU_INC = 1e-9
TAU_SUB = 1e-9
TAU_ORTH = 1e-8
TAU_PROJ = 1e-9
TAU_SIGNATURE = 1e-9
TAU_PATCH = 1e-12

# sl(2,R)
TAU_DET = 1e-9
TAU_TRACE = 1e-9
EPS_Q = 1e-12
EXP_SERIES_MAX_NORM = 20.0
EXP_SERIES_TAYLOR_DEGREE = 18

# strata
TAU_MEMBERSHIP = 1e-9
TAU_ADS_MEMBERSHIP = 1e-8
TAU_UNIT = 1e-9

# Orientation constants.
# (A x B) . C = TRIPLE_PRODUCT_SIGN * det3(A, B, C) for the identification
# (a, b, c, -a) -> (a, (b + c) / 2, (b - c) / 2) and A x B = [A, B] / 2.
TRIPLE_PRODUCT_SIGN = -1.0
# z-coordinate of Psi(exp(theta * [[0, -1], [1, 0]])) is ELLIPTIC_Z_SIGN * tan(theta / 2)
ELLIPTIC_Z_SIGN = -1.0
# unit rotation generator, Minkowski (0, 0, -1)
ROTATION_GENERATOR = ((0.0, -1.0), (1.0, 0.0))
UPPER_NILPOTENT = ((0.0, 1.0), (0.0, 0.0))

DUAL_PLANE_RADIUS_SQ = -(math.pi ** 2) / 4.0
