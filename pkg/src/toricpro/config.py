"""Enumeration caps.

The defaults can be overridden with the ``TORICPRO_CAPS`` environment
variable, a comma separated list of ``key=value`` pairs, e.g.
``TORICPRO_CAPS="trees=9,labelings=9"``. Recognised keys are the field
names of :class:`Caps`.
"""

import os
from dataclasses import dataclass, fields, replace

ENV_VAR = "TORICPRO_CAPS"


@dataclass(frozen=True)
class Caps:
    trees: int = 8  # max n for enumerate_trees
    forests: int = 7  # max n for enumerate_forests
    fs: int = 8  # max n for friends-and-strangers graphs
    labelings: int = 10  # max n for full censuses over n! labelings
    edges: int = 24  # max |E| for enumerating acyclic orientations

    @classmethod
    def from_env(cls, environ=None):
        environ = os.environ if environ is None else environ
        raw = environ.get(ENV_VAR, "").strip()
        caps = cls()
        if not raw:
            return caps
        known = {f.name for f in fields(cls)}
        updates = {}
        for item in raw.split(","):
            item = item.strip()
            if not item:
                continue
            key, sep, value = item.partition("=")
            key = key.strip()
            if not sep or key not in known:
                raise ValueError(f"bad {ENV_VAR} entry {item!r}; keys are {sorted(known)}")
            updates[key] = int(value)
        return replace(caps, **updates)


class CapExceeded(ValueError):
    pass


def caps() -> Caps:
    return Caps.from_env()


def check_cap(name: str, value: int, limit: int | None = None):
    limit = getattr(caps(), name) if limit is None else limit
    if value > limit:
        raise CapExceeded(f"{name} cap exceeded: {value} > {limit} (set {ENV_VAR} to raise it)")
