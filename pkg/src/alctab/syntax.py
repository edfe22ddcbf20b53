"""Core syntax of the description logic ALC.

Concepts, roles, individuals and facts are immutable values with structural
equality, so they can be hashed, shared between tableau branches and used as
dict keys. An ABox branch is an ordered, duplicate-free tuple of facts: the
order carries the deterministic scan order of the tableau rules, while
``set(abox)`` recovers the set-level view.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

ConceptName = str
RoleName = str


@dataclass(frozen=True)
class Role:
    """An atomic role. ALC has no other role formers."""

    name: RoleName

    def __post_init__(self) -> None:
        if not self.name:
            raise ValueError("role name must be non-empty")


@dataclass(frozen=True)
class Named:
    """An individual from the input namespace."""

    name: str

    def __post_init__(self) -> None:
        if not self.name:
            raise ValueError("individual name must be non-empty")


@dataclass(frozen=True)
class Anon:
    """A generated witness individual, identified by its allocation index."""

    index: int

    def __post_init__(self) -> None:
        if self.index < 0:
            raise ValueError("allocation index must be a natural number")


Individual = Union[Named, Anon]


@dataclass(frozen=True)
class Atom:
    name: ConceptName

    def __post_init__(self) -> None:
        if not self.name:
            raise ValueError("concept name must be non-empty")


@dataclass(frozen=True)
class Top:
    pass


@dataclass(frozen=True)
class Bottom:
    pass


@dataclass(frozen=True)
class Not:
    child: "Concept"


@dataclass(frozen=True)
class And:
    left: "Concept"
    right: "Concept"


@dataclass(frozen=True)
class Or:
    left: "Concept"
    right: "Concept"


@dataclass(frozen=True)
class All:
    role: Role
    child: "Concept"


@dataclass(frozen=True)
class Some:
    role: Role
    child: "Concept"


Concept = Union[Atom, Top, Bottom, Not, And, Or, All, Some]

TOP = Top()
BOTTOM = Bottom()


@dataclass(frozen=True)
class Inst:
    """Concept assertion: the subject individual belongs to the concept."""

    subject: Individual
    concept: Concept


@dataclass(frozen=True)
class Rel:
    """Role assertion: (source, target) is in the role's extension."""

    role: Role
    source: Individual
    target: Individual


Fact = Union[Inst, Rel]

Abox = tuple[Fact, ...]


def dedup_facts(facts: Iterable[Fact]) -> Abox:
    """Drop duplicate facts, keeping the first occurrence of each."""
    return tuple(dict.fromkeys(facts))


def make_abox(facts: Iterable[Fact]) -> Abox:
    """Build an ABox branch, rejecting duplicate facts."""
    out = tuple(facts)
    if len(set(out)) != len(out):
        raise ValueError("duplicate facts in abox")
    return out


def size_concept(concept: Concept) -> int:
    """Number of constructor nodes in the concept tree.

    Every constructor counts one, including Top, Bottom and atoms.
    """
    match concept:
        case Atom() | Top() | Bottom():
            return 1
        case Not(child) | All(_, child) | Some(_, child):
            return 1 + size_concept(child)
        case And(left, right) | Or(left, right):
            return 1 + size_concept(left) + size_concept(right)
    raise TypeError(f"not a concept: {concept!r}")


def existential_count(concept: Concept) -> int:
    """Total number of existential-restriction nodes in the tree."""
    match concept:
        case Atom() | Top() | Bottom():
            return 0
        case Not(child) | All(_, child):
            return existential_count(child)
        case Some(_, child):
            return 1 + existential_count(child)
        case And(left, right) | Or(left, right):
            return existential_count(left) + existential_count(right)
    raise TypeError(f"not a concept: {concept!r}")


def quantifier_free(concept: Concept) -> bool:
    """True when the concept contains no role restriction."""
    match concept:
        case Atom() | Top() | Bottom():
            return True
        case Not(child):
            return quantifier_free(child)
        case And(left, right) | Or(left, right):
            return quantifier_free(left) and quantifier_free(right)
        case All() | Some():
            return False
    raise TypeError(f"not a concept: {concept!r}")


def nnf(concept: Concept) -> Concept:
    """Rewrite into negation normal form.

    Negations are pushed inward by De Morgan's laws and quantifier duality
    until they apply only to atoms; double negations and negated constants
    are eliminated. The result is logically equivalent to the input.
    """
    match concept:
        case Atom() | Top() | Bottom():
            return concept
        case Not(child):
            return _nnf_complement(child)
        case And(left, right):
            return And(nnf(left), nnf(right))
        case Or(left, right):
            return Or(nnf(left), nnf(right))
        case All(role, child):
            return All(role, nnf(child))
        case Some(role, child):
            return Some(role, nnf(child))
    raise TypeError(f"not a concept: {concept!r}")


def _nnf_complement(concept: Concept) -> Concept:
    """Negation normal form of the complement of `concept`."""
    match concept:
        case Atom():
            return Not(concept)
        case Top():
            return BOTTOM
        case Bottom():
            return TOP
        case Not(child):
            return nnf(child)
        case And(left, right):
            return Or(_nnf_complement(left), _nnf_complement(right))
        case Or(left, right):
            return And(_nnf_complement(left), _nnf_complement(right))
        case All(role, child):
            return Some(role, _nnf_complement(child))
        case Some(role, child):
            return All(role, _nnf_complement(child))
    raise TypeError(f"not a concept: {concept!r}")


def is_nnf(concept: Concept) -> bool:
    """True iff every negation in the concept applies directly to an atom."""
    match concept:
        case Atom() | Top() | Bottom():
            return True
        case Not(child):
            return isinstance(child, Atom)
        case And(left, right) | Or(left, right):
            return is_nnf(left) and is_nnf(right)
        case All(_, child) | Some(_, child):
            return is_nnf(child)
    raise TypeError(f"not a concept: {concept!r}")


def is_nnf_abox(abox: Abox) -> bool:
    """True iff every concept asserted in the ABox is in negation normal form."""
    return all(is_nnf(f.concept) for f in abox if isinstance(f, Inst))


def individuals_of(abox: Abox) -> tuple[Individual, ...]:
    """Individuals occurring in the ABox, in first-occurrence order."""
    seen: dict[Individual, None] = {}
    for fact in abox:
        if isinstance(fact, Inst):
            seen.setdefault(fact.subject)
        else:
            seen.setdefault(fact.source)
            seen.setdefault(fact.target)
    return tuple(seen)


def fresh_individual(abox: Abox) -> Anon:
    """Allocate a witness individual that occurs nowhere in the ABox.

    Deterministic: one plus the largest allocation index present, or index 0
    when the ABox holds no generated individuals. Named individuals never
    influence allocation.
    """
    taken = [ind.index for ind in individuals_of(abox) if isinstance(ind, Anon)]
    return Anon(max(taken) + 1 if taken else 0)


def concept_names(concept: Concept) -> frozenset[ConceptName]:
    match concept:
        case Atom(name):
            return frozenset({name})
        case Top() | Bottom():
            return frozenset()
        case Not(child) | All(_, child) | Some(_, child):
            return concept_names(child)
        case And(left, right) | Or(left, right):
            return concept_names(left) | concept_names(right)
    raise TypeError(f"not a concept: {concept!r}")


def role_names(concept: Concept) -> frozenset[RoleName]:
    match concept:
        case Atom() | Top() | Bottom():
            return frozenset()
        case Not(child):
            return role_names(child)
        case All(role, child) | Some(role, child):
            return frozenset({role.name}) | role_names(child)
        case And(left, right) | Or(left, right):
            return role_names(left) | role_names(right)
    raise TypeError(f"not a concept: {concept!r}")


def abox_signature(abox: Abox) -> tuple[tuple[ConceptName, ...], tuple[RoleName, ...]]:
    """Concept and role names mentioned anywhere in the ABox, sorted."""
    atoms: set[ConceptName] = set()
    roles: set[RoleName] = set()
    for fact in abox:
        if isinstance(fact, Inst):
            atoms |= concept_names(fact.concept)
            roles |= role_names(fact.concept)
        else:
            roles.add(fact.role.name)
    return tuple(sorted(atoms)), tuple(sorted(roles))
