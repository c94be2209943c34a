import logging

from celery import shared_task
from django.conf import settings

from witness.separability import witness
from witness.sweep import familyState, SweepPoint

logger = logging.getLogger(settings.WORKER_LOG_NAME)


@shared_task()
def evaluateSweepPoint(family: str, parameter: float, tol: float) -> dict:
    rho = familyState(family, parameter)
    report = witness(rho, tol)
    logger.info(f"{family}({parameter!r}): {report.conclusion.value}, min PT eigenvalue {report.minPtEigenvalue!r}")
    return SweepPoint.fromReport(parameter, report).toDict()
