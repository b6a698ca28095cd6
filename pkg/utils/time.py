from datetime import datetime
from dateutil import tz

MILLISECONDS_IN_SEC = 1000
MILLISECONDS_IN_MIN = (1000 * 60)
MILLISECONDS_IN_HOUR = (1000 * 60 * 60)


def convert_utc_time_to_local_time(utc_time: 'datetime') -> 'datetime':
    utc_time = utc_time.replace(tzinfo=tz.tzutc())
    return utc_time.astimezone(tz.tzlocal())


def local_timestamp() -> str:
    return convert_utc_time_to_local_time(datetime.utcnow()).isoformat()


def format_milliseconds(duration: float) -> str:
    duration = int(round(duration))
    hours, remainder = divmod(duration, MILLISECONDS_IN_HOUR)
    minutes, remainder = divmod(remainder, MILLISECONDS_IN_MIN)
    seconds, milliseconds = divmod(remainder, MILLISECONDS_IN_SEC)
    return f'{hours}h:{minutes}m:{seconds}s:{milliseconds}ms'
