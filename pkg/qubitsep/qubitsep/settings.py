"""
Django settings for qubitsep project.

The project has no web surface: Django provides configuration, logging and the
management commands (analyze, reduce, make_state, sweep) of the witness app.

For more information on this file, see
https://docs.djangoproject.com/en/5.1/topics/settings/
"""
import os
from pathlib import Path

import environ

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

# Default env values:
env = environ.Env(
    DEBUG=(bool, False),
    SECRET_KEY=(str, "qubitsep-local-only"),
    WITNESS_TOL=(float, 1e-9),
    WITNESS_RANK_TOL=(float, 1e-10),
    SWEEP_BISECTION_WIDTH=(float, 1e-6),
    SWEEP_TIMEOUT=(int, 300),
    CELERY_TASK_ALWAYS_EAGER=(bool, True),
    REDIS_HOST=(str, "redis://localhost"),
    REDIS_PORT=(str, "6379"),
    LOG_DIR=(str, "logs"),
)

environ.Env.read_env(BASE_DIR / ".env")

SECRET_KEY = env("SECRET_KEY")

DEBUG = env("DEBUG")

ALLOWED_HOSTS = []

# Application definition

INSTALLED_APPS = [
    'witness.apps.WitnessConfig',
]

# no persistence, every result is written to stdout or a file
DATABASES = {}

USE_TZ = True

TIME_ZONE = 'CET'

# Numerical defaults, overridable per call via --tol
WITNESS_TOL = env("WITNESS_TOL")
WITNESS_RANK_TOL = env("WITNESS_RANK_TOL")
if WITNESS_TOL < 0 or WITNESS_RANK_TOL < 0:
    raise ValueError("Tolerances must be non-negative")

SWEEP_BISECTION_WIDTH = env("SWEEP_BISECTION_WIDTH")
SWEEP_TIMEOUT = env("SWEEP_TIMEOUT")

REPORT_SCHEMA = 1

REDIS_HOST = env("REDIS_HOST")
REDIS_PORT = env("REDIS_PORT")

CELERY_BROKER_URL = f"{REDIS_HOST}:{REDIS_PORT}"
CELERY_RESULT_BACKEND = f"{REDIS_HOST}:{REDIS_PORT}"
CELERY_TASK_ALWAYS_EAGER = env("CELERY_TASK_ALWAYS_EAGER")
CELERY_TASK_SERIALIZER = "json"
CELERY_RESULT_SERIALIZER = "json"

LOG_DIR = BASE_DIR / Path(env("LOG_DIR"))
LOG_DIR.mkdir(parents=True, exist_ok=True)

WITNESS_LOG_NAME = "qubitsep"
WORKER_LOG_NAME = "qubitsep_celery"

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "verbose": {
            'format': '[%(asctime)s] %(levelname)s - {%(message)s}'
        }
    },
    "handlers": {
        "console": {
            "class": "logging.StreamHandler",
            "formatter": "verbose"
        },
        "worker": {
            "class": "logging.handlers.RotatingFileHandler",
            "filename": LOG_DIR / "worker_log.txt",
            'maxBytes': 10 * 1024 * 1024,
            "formatter": "verbose"
        },
        "witness": {
            "class": "logging.handlers.RotatingFileHandler",
            "filename": LOG_DIR / "witness_log.txt",
            'maxBytes': 10 * 1024 * 1024,
            "formatter": "verbose"
        },
    },
    "root": {
        "handlers": ["console"],
        "level": "WARNING",
    },
    "loggers": {
        WITNESS_LOG_NAME: {
            "handlers": ["witness"],
            "level": os.getenv("DJANGO_LOG_LEVEL", "INFO"),
            "propagate": False,
        },
        WORKER_LOG_NAME: {
            "handlers": ["console", "worker"],
            "level": os.getenv("DJANGO_LOG_LEVEL", "INFO"),
            "propagate": False,
        },
    },
}
