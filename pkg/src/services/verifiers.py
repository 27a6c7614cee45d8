"""
Definition-based verifiers for domination and secure-domination sets.

This module is the ground truth of the laboratory: every solver result,
closed-form witness, and characterization predicate is checked against the
swap-based definitions implemented here. It also evaluates the closed-form
defense predicates expressed through private neighborhoods, which are
derived accelerators and never trusted on their own.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Tuple

from src.core.config import SETKIND_ALIASES
from src.core.exceptions import PreconditionError
from src.models.digraph import Digraph, SetKind, VertexSet, iter_bits


class Coverage(Enum):
    OUT = "out"
    IN = "in"
    UNDERLYING = "underlying"
    TWIN = "twin"


class FailureReason(Enum):
    NOT_DOMINATED = "not_dominated"
    UNDEFENDED = "undefended"


# Domination condition each kind requires of the set itself
BASE_COVERAGE: Dict[SetKind, Coverage] = {
    SetKind.OUT_DOMINATING: Coverage.OUT,
    SetKind.IN_DOMINATING: Coverage.IN,
    SetKind.UNDERLYING_DOMINATING: Coverage.UNDERLYING,
    SetKind.TWIN_DOMINATING: Coverage.TWIN,
    SetKind.SDS: Coverage.UNDERLYING,
    SetKind.SODS: Coverage.OUT,
    SetKind.OSDS: Coverage.UNDERLYING,
    SetKind.OSODS: Coverage.OUT,
    SetKind.ISODS: Coverage.OUT,
}

# Domination condition the swapped set must keep
SWAP_COVERAGE: Dict[SetKind, Coverage] = {
    SetKind.SDS: Coverage.UNDERLYING,
    SetKind.SODS: Coverage.OUT,
    SetKind.OSDS: Coverage.UNDERLYING,
    SetKind.OSODS: Coverage.OUT,
    SetKind.ISODS: Coverage.OUT,
}


def covered(digraph: Digraph, bits: int, coverage: Coverage) -> int:
    """Mask of vertices dominated by `bits` under the given coverage notion."""
    if coverage is Coverage.TWIN:
        return covered(digraph, bits, Coverage.OUT) & covered(digraph, bits, Coverage.IN)
    result = bits
    for u in iter_bits(bits):
        if coverage is Coverage.OUT:
            result |= digraph.out_adj[u]
        elif coverage is Coverage.IN:
            result |= digraph.in_adj[u]
        else:
            result |= digraph.out_adj[u] | digraph.in_adj[u]
    return result | bits


def dominates(digraph: Digraph, bits: int, coverage: Coverage) -> bool:
    return covered(digraph, bits, coverage) == digraph.full_mask


def defender_pool(digraph: Digraph, v: int, kind: SetKind) -> int:
    """Vertices adjacent to v in the direction the kind allows a defender."""
    if kind in (SetKind.SDS, SetKind.SODS):
        return digraph.out_adj[v] | digraph.in_adj[v]
    if kind in (SetKind.OSDS, SetKind.OSODS):
        return digraph.in_adj[v]
    if kind is SetKind.ISODS:
        return digraph.out_adj[v]
    raise PreconditionError(f"{kind.value} is not a secure set kind")


@dataclass
class DefenseWitness:
    """Defender chosen for every vertex outside S; None when undefended."""
    defenders: Dict[int, Optional[int]] = field(default_factory=dict)

    @property
    def undefended(self) -> List[int]:
        return [v for v, u in sorted(self.defenders.items()) if u is None]

    def to_dict(self) -> Dict[str, Optional[int]]:
        return {
            str(v + 1): (u + 1 if u is not None else None)
            for v, u in sorted(self.defenders.items())
        }


def _check_vertex(digraph: Digraph, v: int) -> None:
    if not 0 <= v < digraph.n:
        raise PreconditionError(f"vertex {v} outside 0..{digraph.n - 1}")


def pn_plus(digraph: Digraph, s: VertexSet, u: int) -> VertexSet:
    """Out-private neighbors: {v : N⁻[v] ∩ S = {u}}."""
    _check_vertex(digraph, u)
    if u not in s:
        raise PreconditionError(f"vertex {u + 1} is not in S")
    target = 1 << u
    bits = 0
    for v in range(digraph.n):
        if digraph.closed_in(v) & s.bits == target:
            bits |= 1 << v
    return VertexSet(bits, digraph.n)


def pn_minus(digraph: Digraph, s: VertexSet, u: int) -> VertexSet:
    """In-private neighbors: {v : N⁺[v] ∩ S = {u}}."""
    _check_vertex(digraph, u)
    if u not in s:
        raise PreconditionError(f"vertex {u + 1} is not in S")
    target = 1 << u
    bits = 0
    for v in range(digraph.n):
        if digraph.closed_out(v) & s.bits == target:
            bits |= 1 << v
    return VertexSet(bits, digraph.n)


def _swap_defends(digraph: Digraph, bits: int, u: int, v: int, kind: SetKind) -> bool:
    if not defender_pool(digraph, v, kind) >> u & 1:
        return False
    swapped = (bits & ~(1 << u)) | 1 << v
    return dominates(digraph, swapped, SWAP_COVERAGE[kind])


def defends(digraph: Digraph, s: VertexSet, u: int, v: int, kind: SetKind) -> bool:
    """Whether u ∈ S defends v ∉ S by the swap definition of `kind`."""
    _check_vertex(digraph, u)
    _check_vertex(digraph, v)
    if kind not in SWAP_COVERAGE:
        raise PreconditionError(f"{kind.value} has no defense relation")
    if u not in s:
        raise PreconditionError(f"defender {u + 1} is not in S")
    if v in s:
        raise PreconditionError(f"vertex {v + 1} is already in S")
    return _swap_defends(digraph, s.bits, u, v, kind)


def first_defender(digraph: Digraph, bits: int, v: int, kind: SetKind) -> Optional[int]:
    """Smallest-index valid defender of v, or None."""
    for u in iter_bits(defender_pool(digraph, v, kind) & bits):
        if _swap_defends(digraph, bits, u, v, kind):
            return u
    return None


def is_secure_set(digraph: Digraph, s: VertexSet, kind: SetKind) -> Tuple[bool, DefenseWitness]:
    """Base domination plus a defender for every outside vertex."""
    if kind not in SWAP_COVERAGE:
        raise PreconditionError(f"{kind.value} is not a secure set kind")
    witness = DefenseWitness()
    valid = dominates(digraph, s.bits, BASE_COVERAGE[kind])
    for v in iter_bits(digraph.full_mask & ~s.bits):
        defender = first_defender(digraph, s.bits, v, kind)
        witness.defenders[v] = defender
        if defender is None:
            valid = False
    return valid, witness


def secure_bits(digraph: Digraph, bits: int, kind: SetKind) -> bool:
    """Early-exit secure check on a raw bitset."""
    if not dominates(digraph, bits, BASE_COVERAGE[kind]):
        return False
    for v in iter_bits(digraph.full_mask & ~bits):
        if first_defender(digraph, bits, v, kind) is None:
            return False
    return True


def is_set(digraph: Digraph, s: VertexSet, kind: SetKind) -> bool:
    """Exact definitional membership test for every set kind."""
    if kind in SWAP_COVERAGE:
        return secure_bits(digraph, s.bits, kind)
    return dominates(digraph, s.bits, BASE_COVERAGE[kind])


def first_failure(digraph: Digraph, s: VertexSet, kind: SetKind) -> Optional[Tuple[int, FailureReason]]:
    """First vertex (ascending) that breaks the kind, with the reason."""
    uncovered = digraph.full_mask & ~covered(digraph, s.bits, BASE_COVERAGE[kind])
    if uncovered:
        return next(iter_bits(uncovered)), FailureReason.NOT_DOMINATED
    if kind in SWAP_COVERAGE:
        for v in iter_bits(digraph.full_mask & ~s.bits):
            if first_defender(digraph, s.bits, v, kind) is None:
                return v, FailureReason.UNDEFENDED
    return None


# Closed-form defense predicates


class DefenseForm(Enum):
    """Private-neighborhood characterizations of a single defense."""
    OSODS_FROM_IN_NEIGHBOR = "osods_from_in_neighbor"
    OSDS_FROM_IN_NEIGHBOR = "osds_from_in_neighbor"
    SODS_FROM_OUT_NEIGHBOR = "sods_from_out_neighbor"
    SODS_FROM_IN_NEIGHBOR = "sods_from_in_neighbor"
    ISODS_FROM_OUT_NEIGHBOR = "isods_from_out_neighbor"

    @property
    def kind(self) -> SetKind:
        return _FORM_KIND[self]

    @property
    def defender_is_in_neighbor(self) -> bool:
        """True when the form requires u ∈ N⁻(v), False for u ∈ N⁺(v)."""
        return self in (
            DefenseForm.OSODS_FROM_IN_NEIGHBOR,
            DefenseForm.OSDS_FROM_IN_NEIGHBOR,
            DefenseForm.SODS_FROM_IN_NEIGHBOR,
        )

    @property
    def complete_without_symmetric_arcs(self) -> bool:
        return self is not DefenseForm.OSDS_FROM_IN_NEIGHBOR


_FORM_KIND = {
    DefenseForm.OSODS_FROM_IN_NEIGHBOR: SetKind.OSODS,
    DefenseForm.OSDS_FROM_IN_NEIGHBOR: SetKind.OSDS,
    DefenseForm.SODS_FROM_OUT_NEIGHBOR: SetKind.SODS,
    DefenseForm.SODS_FROM_IN_NEIGHBOR: SetKind.SODS,
    DefenseForm.ISODS_FROM_OUT_NEIGHBOR: SetKind.ISODS,
}


def form_applies(digraph: Digraph, u: int, v: int, form: DefenseForm) -> bool:
    if form.defender_is_in_neighbor:
        return digraph.has_arc(u, v)
    return digraph.has_arc(v, u)


def char_defense(digraph: Digraph, s: VertexSet, u: int, v: int, form: DefenseForm) -> bool:
    """Evaluate the closed-form predicate literally, without performing the swap."""
    if u not in s:
        raise PreconditionError(f"defender {u + 1} is not in S")
    if v in s:
        raise PreconditionError(f"vertex {v + 1} is already in S")
    if not form_applies(digraph, u, v, form):
        direction = "in" if form.defender_is_in_neighbor else "out"
        raise PreconditionError(f"vertex {u + 1} is not an {direction}-neighbor of {v + 1}")

    private_out = pn_plus(digraph, s, u).bits
    if form is DefenseForm.OSDS_FROM_IN_NEIGHBOR:
        private = private_out | pn_minus(digraph, s, u).bits
        reach = digraph.closed_out(v) | digraph.closed_in(v)
        return private & ~reach == 0

    fits = private_out & ~digraph.closed_out(v) == 0
    if form in (DefenseForm.OSODS_FROM_IN_NEIGHBOR, DefenseForm.SODS_FROM_IN_NEIGHBOR):
        return bool(digraph.in_adj[u] & s.bits) and fits
    return fits


_COROLLARY_FORMS = {
    SetKind.OSODS: (DefenseForm.OSODS_FROM_IN_NEIGHBOR,),
    SetKind.OSDS: (DefenseForm.OSDS_FROM_IN_NEIGHBOR,),
    SetKind.SODS: (DefenseForm.SODS_FROM_OUT_NEIGHBOR, DefenseForm.SODS_FROM_IN_NEIGHBOR),
    SetKind.ISODS: (DefenseForm.ISODS_FROM_OUT_NEIGHBOR,),
}


def corollary_check(digraph: Digraph, s: VertexSet, kind: SetKind) -> bool:
    """Whole-set characterization: base domination and, for every v ∉ S, some
    adjacent u ∈ S satisfying one of the kind's closed-form predicates."""
    forms = _COROLLARY_FORMS.get(kind)
    if forms is None:
        raise PreconditionError(f"no closed-form characterization for {kind.value}")
    if not dominates(digraph, s.bits, BASE_COVERAGE[kind]):
        return False
    for v in iter_bits(digraph.full_mask & ~s.bits):
        found = False
        for form in forms:
            pool = digraph.in_adj[v] if form.defender_is_in_neighbor else digraph.out_adj[v]
            if any(char_defense(digraph, s, u, v, form) for u in iter_bits(pool & s.bits)):
                found = True
                break
        if not found:
            return False
    return True


@dataclass(frozen=True)
class PairSets:
    """Large secure sets read off one vertex with an in- and an out-neighbor."""
    center: int
    in_neighbor: int
    out_neighbor: int
    osods: VertexSet
    isods: VertexSet


def observation_pair_sets(digraph: Digraph) -> Optional[PairSets]:
    """For the first vertex w with an in-neighbor x and an out-neighbor y:
    V minus y is an OSODS and V minus w is an ISODS."""
    full = VertexSet.full(digraph.n)
    for w in range(digraph.n):
        if digraph.in_adj[w] and digraph.out_adj[w]:
            x = next(iter_bits(digraph.in_adj[w]))
            y = next(iter_bits(digraph.out_adj[w]))
            return PairSets(w, x, y, full.remove(y), full.remove(w))
    return None


def parse_set_kind(name: str) -> SetKind:
    """Resolve a CLI spelling or enum value to a SetKind."""
    lowered = name.strip().lower()
    for value, aliases in SETKIND_ALIASES.items():
        if lowered == value or lowered in aliases:
            return SetKind(value)
    raise PreconditionError(f"unknown set kind '{name}'")
