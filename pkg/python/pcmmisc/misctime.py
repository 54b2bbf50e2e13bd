"""
    .. _pcmmisc-misctime:

    **misctime**
    ------------

    Miscellaneous date/time utility
"""

import datetime
from dateutil.parser import parse
from dateutil import tz

def report_timestamp(datestr=None):
    """ Create the timestamp stamped into reports. Reports are only
        timestamped on request, so that repeated runs stay byte-identical
        unless asked otherwise.

        Parameters
        ----------
        datestr : str, optional
            A fixed timestamp to use instead of the current time. Any format
            understood by dateutil is accepted; values without a time zone are
            taken as UTC.

        Returns
        -------
        str
            ISO 8601 timestamp in UTC, e.g. 2024-05-01T12:00:00+00:00
    """
    utc_zone = tz.gettz('UTC')

    if datestr is None:
        stamp = datetime.datetime.now(tz=utc_zone)
    else:
        stamp = parse(datestr)
        if stamp.tzinfo is None:
            stamp = stamp.replace(tzinfo=utc_zone)
        else:
            stamp = stamp.astimezone(utc_zone)

    return stamp.replace(microsecond=0).isoformat()
