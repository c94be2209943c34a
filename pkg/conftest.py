# Test collection wiring: configure Django the way `manage.py test` does,
# so pytest can collect the witness test suite.
import os

import django

os.environ.setdefault("DJANGO_SETTINGS_MODULE", "qubitsep.settings")
django.setup()


def pytest_configure(config):
    from django.test.utils import setup_test_environment
    setup_test_environment()
