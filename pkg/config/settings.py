import math

# Tolerances
EPSILON = 1e-12
POLE_EPSILON = 1e-12
DEGENERATE_EPSILON = 1e-8
DENSITY_FLOOR = 1e-6
COEFF_PRUNE = 1e-14

# Jets
MAX_JET_ORDER = 3

# Frames
FLAG_TOLERANCE = 1e-8
PARTNER_FLAG_TOLERANCE = 1e-10
FRAME_TOLERANCE = 1e-6
MIN_FD_STEP = 1e-6
MAX_FD_STEP = 1e-2
PHASE_COMPONENT_MIN = 0.1

# Root finding
ABERTH_MAX_SWEEPS = 200
ROOT_MERGE_RADIUS = 1e-6

# Zeros and winding numbers
CONTOUR_FLOOR = 1e-9
MIN_WINDING_SAMPLES = 64
MAX_WINDING_SAMPLES = 1 << 16
MAX_PHASE_STEP = math.pi / 2
ZERO_MERGE_RADIUS = 1e-4
SEAM_TOLERANCE = 1e-6
WINDING_RADIUS_CAP = 0.25
ZERO_ACCEPT = 1e-9
NEWTON_MAX_STEPS = 100
NEWTON_FD_STEP = 1e-7
VANISHING_PEAK = 1e-10
DEFAULT_CANDIDATE_TOL = 0.1

# Quadrature
QUADRATURE_DRIFT_LIMIT = 0.1

# Surfaces
SURFACE_DEGENERATE_FLOOR = 1e-10
CONFORMAL_LIMIT = 1e-3
BRANCH_THRESHOLD = 1e-3

# Run defaults
DEFAULT_TOL = 1e-7
DEFAULT_FD_STEP = 1e-3
DEFAULT_GRID_WIDTH = 1.5
DEFAULT_GRID_SAMPLES = 41
MIN_GRID_SAMPLES = 9
DEFAULT_FORMAT = "json"
DEFAULT_JOBS = 1
SETTINGS_FILE = "settings.yml"
