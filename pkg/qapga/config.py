# -*- coding: utf-8 -*-
import os.path

BASE_DIR = os.path.abspath(os.path.join(os.path.dirname(__file__), '..'))

# -------------------------------------------------------------------------
# Debug Flag
# Validates every chromosome of every generation when set, otherwise one
# sampled chromosome per generation
# -------------------------------------------------------------------------
DEBUG = False

# -------------------------------------------------------------------------
# Logging
# -------------------------------------------------------------------------
LOG_DIR = os.path.join(BASE_DIR, 'logs')
LOG_LEVEL = 'INFO'
LOG_EVERY = 100  # generations between progress lines

# -------------------------------------------------------------------------
# Genetic Algorithm Defaults
# -------------------------------------------------------------------------
POPULATION_SIZE = 100
CROSSOVER_RATE = 0.8
MUTATION_RATE = 0.2
MAX_GENERATIONS = 1000
ELITISM_COUNT = 1
RNG_SEED = 0
TARGET_COST = None
TIME_LIMIT_S = None
INIT_METHOD = 'shuffle'

# -------------------------------------------------------------------------
# Exhaustive Oracle
# -------------------------------------------------------------------------
ORACLE_LIMIT = 10
ORACLE_BATCH_SIZE = 20000

# -------------------------------------------------------------------------
# Benchmark
# -------------------------------------------------------------------------
BENCH_SEEDS = '1..10'
BENCH_JOBS = 1
REPORT_FORMAT = 'csv'

# -------------------------------------------------------------------------
# Dataset Configuration
# -------------------------------------------------------------------------
QAPLIB_DIR = os.path.join(BASE_DIR, 'data', 'qaplib')
BASELINES_FILEPATH = os.path.join(BASE_DIR, 'data', 'baselines.csv')

# -------------------------------------------------------------------------
# Application HTTP Server
# -------------------------------------------------------------------------
HOST = '0.0.0.0'
PORT = 5000
API_MAX_GENERATIONS = 500
API_MAX_N = 64
