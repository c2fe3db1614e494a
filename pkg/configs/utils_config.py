# Sampling
SL2_ENTRY_SCALE = 3.0
# |det| of the Gaussian draw relative to scale^2; bounds the entries after rescaling
SL2_MIN_ABS_DET = 1e-2
ISOMETRY_ENTRY_SCALE = 1.0
TANGENT_MAGNITUDE_RANGE = (0.1, 3.0)
STEM_RAPIDITY_RANGE = (-2.0, 2.0)
EXP_ORACLE_MAX_NORM = 5.0
EXP_BRANCH_WIDTH = 1e-8

# Parsers
POINT_DIMENSION = 5
