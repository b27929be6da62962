"""
Utility functions shared by the service and the reports.
"""
import pytz

import settings


def report_timezone():
    try:
        return pytz.timezone(settings.REPORT_TIMEZONE)
    except pytz.UnknownTimeZoneError:
        return pytz.utc


def to_report_timezone(dt):
    """Convert a datetime to the report timezone. Naive datetimes are taken as UTC."""
    if dt is None:
        return None
    if dt.tzinfo is None:
        dt = pytz.utc.localize(dt)
    return dt.astimezone(report_timezone())
