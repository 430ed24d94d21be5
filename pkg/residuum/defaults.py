"""Numerical defaults shared by the engine and the CLI."""

# quadrature
QUAD_TOL = 1e-10
QUAD_MAX_INTERVALS = 2000
AREA_TOL = 1e-9
AREA_MAX_CELLS = 2000

# excision and limit schedules: eps_m = EPS0_FRACTION * distance * Q**m, m = 0..STEPS
EPS0 = 0.1
EPS0_FRACTION = 0.1
Q = 0.5
STEPS = 8
# sector limits run down to eps = 0.1 * 0.5**40, where |z log z| < 3e-12
SECTOR_STEPS = 40
SECTOR_FRACTIONS = (0.25, 0.5, 0.75)
SECTOR_RAY_TOL = 1e-6
LARGE_RADIUS = 10.0

# extrapolation
RICHARDSON_ORDERS = (1, 2, 3)
CONVERGENCE_RATIO = 0.95
NOISE_FLOOR = 1e-10

# geometry
BOUNDARY_TOL_FACTOR = 1e-9
ENDPOINT_MATCH_FACTOR = 1e-12
MAX_SIMPLE_WINDING = 1

# identities
VERIFY_TOL = 1e-6
LEMMA_TOL = 1e-5
CLASSIFY_GRID = 24
CLASSIFY_TOL = 1e-9
PRECONDITION_FRACTIONS = (0.0, 0.25, 0.5, 0.75, 1.0)

# cli / storage
DB_PATH = "residuum_history.db"
LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
