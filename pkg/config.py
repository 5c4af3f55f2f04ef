import os


def _env_int(name, default):
    return int(os.environ.get(name, default))


def _env_list(name, default):
    return [int(part) for part in os.environ.get(name, default).split(',') if part.strip()]


class Config:
    LOG_LEVEL = os.environ.get('LOG_LEVEL', 'INFO').upper()

    # Generators and parallel search
    PLANAR_SEED = _env_int('PLANAR_SEED', 7)
    PLANAR_THREADS = _env_int('PLANAR_THREADS', 1)

    # Empirical caps asserted by `flask verify`
    DEEP_FACE_SLOPE = _env_int('DEEP_FACE_SLOPE', 4)      # a in a*|Z'| + b
    DEEP_FACE_OFFSET = _env_int('DEEP_FACE_OFFSET', 4)    # b
    TREEWIDTH_CAP = _env_int('TREEWIDTH_CAP', 12)         # C in C*(p + |Z'| + 1)
    DIAMETER_SLOPE_CAP = float(os.environ.get('DIAMETER_SLOPE_CAP', 8))
    MAX_ZPRIME = _env_int('MAX_ZPRIME', 6)

    # Default verification corpus; VERIFY_FULL_CORPUS switches `--corpus default` to the full sizes
    VERIFY_FULL_CORPUS = os.environ.get('VERIFY_FULL_CORPUS', 'false').lower() in ['true', 'on', '1']
    VERIFY_LAYERING_GRAPHS = _env_int('VERIFY_LAYERING_GRAPHS', 60)
    VERIFY_LAYERING_MAX_N = _env_int('VERIFY_LAYERING_MAX_N', 120)
    VERIFY_SUPPORT_GRAPHS = _env_int('VERIFY_SUPPORT_GRAPHS', 20)
    VERIFY_SMALL_GRAPHS = _env_int('VERIFY_SMALL_GRAPHS', 20)
    VERIFY_ORACLE_INSTANCES = _env_int('VERIFY_ORACLE_INSTANCES', 24)
    VERIFY_ORACLE_MAX_N = _env_int('VERIFY_ORACLE_MAX_N', 12)
    VERIFY_ORACLE_MAX_K = _env_int('VERIFY_ORACLE_MAX_K', 2)
    VERIFY_GRID_SIZES = _env_list('VERIFY_GRID_SIZES', '6,8,10')
    VERIFY_RANDOM_SIZES = _env_list('VERIFY_RANDOM_SIZES', '60,120')
    VERIFY_P_VALUES = _env_list('VERIFY_P_VALUES', '2,3,4')

    # Sizes used by `--corpus full`
    FULL_CORPUS = {
        'layering_graphs': 500,
        'layering_max_n': 200,
        'support_graphs': 60,
        'small_graphs': 60,
        'oracle_instances': 300,
        'oracle_max_n': 18,
        'oracle_max_k': 3,
        'grid_sizes': [10, 15, 20, 25, 30],
        'random_sizes': [200, 500, 1000, 2000],
        'p_values': [2, 3, 4, 5, 6, 7, 8],
    }


class TestingConfig(Config):
    TESTING = True
    LOG_LEVEL = 'WARNING'
    VERIFY_FULL_CORPUS = False
    VERIFY_LAYERING_GRAPHS = 6
    VERIFY_LAYERING_MAX_N = 40
    VERIFY_SUPPORT_GRAPHS = 4
    VERIFY_SMALL_GRAPHS = 4
    VERIFY_ORACLE_INSTANCES = 4
    VERIFY_ORACLE_MAX_N = 8
    VERIFY_ORACLE_MAX_K = 2
    VERIFY_GRID_SIZES = [5, 6]
    VERIFY_RANDOM_SIZES = [30]
    VERIFY_P_VALUES = [2, 3]
    MAX_ZPRIME = 2
