# Verify Tool
DEFAULT_SEED = 0
DEFAULT_SAMPLES = 10000
SHARD_COUNT = 8
SUITES = ["core", "sl2", "ads", "crooked", "einstein", "main-theorem"]

# residual thresholds a check must stay under; --tol name=val overrides
CHECK_TOLERANCES = {
    "polarization": 1e-12,
    "conformal": 1e-8,
    "projective": 1e-9,
    "psi_null": 1e-10,
    "psi_inversion": 1e-9,
    "exp_oracle": 1e-11,
    "exp_branch": 1e-9,
    "log_roundtrip": 1e-9,
    "period": 1e-10,
    "geodesic_image": 1e-12,
    "totally_geodesic": 1e-9,
    "lie_triple": 1e-9,
    "membership": 1e-8,
    "roundtrip": 1e-8,
    "isometry": 1e-9,
    "ruling_limit": 1e-5,
}

# Main Theorem checks
MAIN_THEOREM_MAX_INSTANCES = 100
MAIN_THEOREM_MAX_PER_STRATUM = 1000
MAIN_THEOREM_RANDOM_POINTS = 10000

# Mesh Tool
MESH_RADIUS = 2.0
ADS_MESH_RADIUS = 1.2
MESH_MIN_RESOLUTION = 2
MESH_MIN_TRIANGLE_AREA = 1e-12
