"""Brute-force reference for closed-net normalization.

Rebuilds the whole multiset of designs at every step instead of keeping
an environment of listeners; used only to cross-check the engine.
"""

from groundkit.designs import DaimonLeaf, Design, FidLeaf, NegNode, PosNode, \
    child


def oracle_normalize(designs, fuel: int = 100_000):
    """Return ("converged" | "diverged" | "fuel", consumed (focus, ram) list)."""
    designs = list(designs)
    consumed = []
    for _ in range(fuel + 1):
        positives = [d for d in designs if d.base.neg is None]
        assert len(positives) == 1, "closed net must keep a unique positive"
        current = positives[0]
        rest = [d for d in designs if d is not current]
        match current.node:
            case DaimonLeaf():
                return "converged", consumed
            case FidLeaf():
                return "diverged", consumed
            case PosNode(focus, ram, kids):
                listeners = [d for d in rest if d.base.neg == focus]
                assert len(listeners) == 1
                counter = listeners[0]
                assert isinstance(counter.node, NegNode)
                branch = counter.node.branch_map().get(ram)
                if branch is None:
                    return "diverged", consumed
                consumed.append((focus, ram))
                new = [d for d in rest if d is not counter]
                new.append(branch)
                for i, c in zip(ram, kids):
                    assert c.base.neg == child(focus, i)
                    new.append(c)
                designs = new
            case _:
                raise AssertionError("negative principal in a closed net")
    return "fuel", consumed
