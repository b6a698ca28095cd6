from importlib import metadata
from typing import Optional

PACKAGE_NAME = 'tcpkit'


def get_package_version() -> Optional[str]:
    try:
        return metadata.version(PACKAGE_NAME)
    except Exception:
        pass

    return None
