"""
Step routing: which pipeline steps each CLI/API command runs, in order.
"""
from typing import Dict, List

from src.core.errors import RoutingError

ROUTES: Dict[str, List[str]] = {
    "sweep": ["sweep", "report"],
    "resonances": ["resonances", "report"],
    "verify": ["verify", "report"],
}


def plan_route(command: str) -> List[str]:
    try:
        return list(ROUTES[command])
    except KeyError:
        raise RoutingError(f"unknown command {command!r}; expected one of {sorted(ROUTES)}")
