"""Resource guards for enumeration-heavy operations.

Operations that materialize grids, candidate boxes, or outcome spaces refuse
to run past a configured item count. The limit can be overridden per call or
globally through the DISPGRID_ENUM_LIMIT environment variable.
"""

import os

DEFAULT_ENUMERATION_LIMIT = 10**8
DEFAULT_OUTCOME_LIMIT = 10**7

ENV_LIMIT = "DISPGRID_ENUM_LIMIT"


class GuardExceeded(RuntimeError):
    """An operation would enumerate more items than its configured limit."""

    def __init__(self, what: str, count: int, limit: int):
        super().__init__(f"{what} needs {count} items, exceeding the limit of {limit}")
        self.what = what
        self.count = count
        self.limit = limit


def resolve_limit(explicit: int | None, default: int) -> int:
    """Effective limit: explicit argument, else environment override, else default."""
    if explicit is not None:
        return explicit
    env = os.environ.get(ENV_LIMIT)
    if env is not None:
        return int(env)
    return default


def check_enumeration(
    what: str,
    count: int,
    explicit: int | None = None,
    default: int = DEFAULT_ENUMERATION_LIMIT,
) -> None:
    limit = resolve_limit(explicit, default)
    if count > limit:
        raise GuardExceeded(what, count, limit)
