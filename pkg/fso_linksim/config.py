import math

# --- Link reference parameters ---
BIT_RATE_HZ = 10e9
SEQUENCE_LENGTH_BITS = 128
SAMPLES_PER_BIT = 64
PRBS_ORDER = 7
PRBS_SEED = 0b0000001
NRZ_LEVEL_ONE = 1.0
NRZ_LEVEL_ZERO = 0.0

# --- Bessel filters (tx subsystem and receiver) ---
FILTER_ORDER = 4
TX_CUTOFF_FACTOR = 0.75
RECEIVER_CUTOFF_FACTOR = 0.75

# --- CW laser ---
LASER_WAVELENGTH_NM = 1550.0
LASER_POWER_DBM = 20.0
LASER_LINEWIDTH_HZ = 5e6  # recorded only, the model is a power envelope

# --- Mach-Zehnder modulator (not given by the reference setup) ---
MZM_EXTINCTION_RATIO_DB = 30.0
MZM_INSERTION_LOSS_DB = 0.0

# --- FSO terminal geometry ---
TX_APERTURE_M = 0.05  # not a reference value, typical commercial terminal
RX_APERTURE_M = 0.20  # not a reference value, typical commercial terminal
BEAM_DIVERGENCE_RAD = 3e-3

# name -> (gamma dB/km, range km)
WEATHER_PRESETS = {
    "rain": (6.0, 1.0),
    "fog": (100.0, 0.3),
    "clear": (0.2, 1.0),  # baseline only, not a reference value
}
DEFAULT_PRESET = "rain"

# --- APD ---
APD_RESPONSIVITY_A_PER_W = 1.0
APD_DARK_CURRENT_A = 10e-9
APD_IONIZATION_RATIO = 0.9
APD_GAIN = 3.0  # not a reference value
APD_THERMAL_PSD_A2_PER_HZ = 1.0e-22  # not a reference value

NOISE_SEED = 42

RECEIVER_SENSITIVITY_DBM = -20.0

# --- PRBS taps, x^a + x^b + 1 ---
PRBS_TAPS = {
    7: (7, 6),
    9: (9, 5),
    11: (11, 9),
    15: (15, 14),
    23: (23, 18),
    31: (31, 28),
}

# --- Max range search ---
MAX_RANGE_MIN_KM = 0.001
MAX_RANGE_MAX_KM = 50.0
MAX_RANGE_TOLERANCE_KM = 0.001

SWEEP_PARAMS = ["gamma_db_per_km", "range_km", "power_dbm"]

# Published values of the rain/fog study, kept for comparison output
REFERENCE_RECEIVED_POWER_DBM = {"rain": -5.066, "fog": -19.099}
REFERENCE_Q_FACTOR = {"rain": 58.0, "fog": 13.0}
REFERENCE_TRANSMITTANCE = {"rain": 0.8253, "fog": 0.9440}

Q_SENTINEL = math.inf

# --- CLI ---
EXIT_OK = 0
EXIT_CONFIG_ERROR = 1
EXIT_RUNTIME_ERROR = 2
NO_COLOR_ENV = "FSO_LINKSIM_NO_COLOR"
DEFAULT_DB_URL = "sqlite:///fso_linksim.db"
TABLE_SIGNIFICANT_DIGITS = 4
