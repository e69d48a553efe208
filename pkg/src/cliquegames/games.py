"""Separator circuits and the four two-party nonedge-finding games.

The games all share one shape: Alice holds a vertex set ``a``, Bob a
disjoint set ``b``, the graph is public, and a promise on the sizes of the
sets guarantees that a nonedge of the required kind exists.  The parties
exchange bits over a counting channel until both know the same nonedge.

The machinery: over one boolean variable per nonedge, associate with every
vertex v the monomial AND of the variables of nonedges touching v.  Alice's
set induces the incidence vector (1 exactly on nonedges touching ``a``),
Bob's the complementary vector.  A threshold (or induced-clique) circuit
applied to the monomials evaluates to 1 on Alice's vector and 0 on Bob's
whenever the promise holds, and a backward Karchmer-Wigderson-style walk
from the output gate, steered one bit per gate, lands on a variable where
the two vectors differ -- a nonedge touching both sets.

Game kinds:

* ``biclique``: promise |a|+|b| > max biclique size; answer crosses a and b.
* ``clique``: promise |a|+|b| > max clique size; answer lies within a ∪ b.
  Per the standard reduction, a side that is not a clique just announces one
  of its own nonedges, so the circuit phase only ever sees clique inputs.
* ``relaxed-clique``: same promise; the answer may also connect ``a`` to a
  common neighbor of ``b`` (Bob zeroes those variables too).
* ``edge-biclique``: promise |a|*|b| > K where no biclique of the graph has
  more than K edges; same circuits, crossing answer.

Both parties rebuild circuits deterministically from shared data instead of
exchanging them, and both decode every message from the transcript alone,
so agreement is structural rather than assumed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence

from .circuit import (
    AND,
    CONST,
    OR,
    VAR,
    Circuit,
    CircuitBuilder,
    CircuitInvariantError,
    build_threshold_sort,
    build_threshold_valiant,
    node_values,
)
from .graph import (
    Graph,
    NonedgeIndex,
    Pair,
    common_neighbors,
    find_nonedge_within,
    has_complete_star,
    max_biclique_size,
    max_clique_size,
    max_edge_biclique,
    maximal_cliques,
    nonedges,
)


class PromiseViolationError(ValueError):
    """The input pair provably fails the game's promise."""


class SeparationError(RuntimeError):
    """A circuit failed to separate the two parties' vectors."""


_KIND_NAMES = ("biclique", "clique", "relaxed-clique", "edge-biclique")


@dataclass(frozen=True)
class GameKind:
    """One of the four game variants; the edge variant carries its bound K."""

    name: str
    edge_bound: Optional[int] = None

    def __post_init__(self):
        if self.name not in _KIND_NAMES:
            raise ValueError(f"unknown game kind {self.name!r}")
        if self.edge_bound is not None:
            if self.name != "edge-biclique":
                raise ValueError("only the edge-biclique game takes an edge bound")
            if self.edge_bound < 0:
                raise ValueError("edge bound must be nonnegative")

    @property
    def has_handshake(self) -> bool:
        return self.name in ("clique", "relaxed-clique")

    @property
    def crossing_goal(self) -> bool:
        return self.name in ("biclique", "edge-biclique")


BICLIQUE = GameKind("biclique")
CLIQUE = GameKind("clique")
RELAXED_CLIQUE = GameKind("relaxed-clique")
EDGE_BICLIQUE = GameKind("edge-biclique")


def kind_from_name(name: str, edge_bound: Optional[int] = None) -> GameKind:
    if name == "edge-biclique":
        return GameKind(name, edge_bound)
    if edge_bound is not None:
        raise ValueError("only the edge-biclique game takes an edge bound")
    return GameKind(name)


@dataclass
class GameConfig:
    """Knobs shared by circuit construction, play, and the harness.

    The cache dicts are pure memoization keyed on immutable inputs; sharing
    a config across plays of the same graph avoids rebuilding circuits and
    re-evaluating repeated vectors.
    """

    builder: str = "sort"
    seed: int = 0
    depth_factor: float = 2.7
    oracle_limit: int = 16
    retries: int = 64
    verify_budget: int = 8192
    circuit_cache: dict = field(default_factory=dict, repr=False, compare=False)
    eval_cache: dict = field(default_factory=dict, repr=False, compare=False)


def _set_mask(s: Iterable[int]) -> int:
    m = 0
    for v in s:
        m |= 1 << v
    return m


def incidence_vector(idx: NonedgeIndex, s: Iterable[int]) -> tuple[int, ...]:
    """Bit per nonedge: 1 exactly on nonedges with an endpoint in ``s``."""
    m = _set_mask(s)
    return tuple(1 if (m >> u & 1) or (m >> v & 1) else 0 for u, v in idx.pairs)


def non_incidence_vector(idx: NonedgeIndex, s: Iterable[int]) -> tuple[int, ...]:
    """Complement of ``incidence_vector``: 0 exactly on nonedges touching ``s``."""
    m = _set_mask(s)
    return tuple(0 if (m >> u & 1) or (m >> v & 1) else 1 for u, v in idx.pairs)


def relaxed_non_incidence_vector(
    g: Graph, idx: NonedgeIndex, b: Iterable[int]
) -> tuple[int, ...]:
    """Like ``non_incidence_vector`` but also 0 on nonedges spanned by Γ(b).

    A nonedge both of whose endpoints are common neighbors of ``b`` is an
    acceptable answer in the relaxed game, so Bob zeroes it as well; the
    result is pointwise <= the plain vector.
    """
    bm = _set_mask(b)
    if not bm:
        raise ValueError("relaxed vector requires a nonempty set")
    gm = _set_mask(common_neighbors(g, b))
    out = []
    for u, v in idx.pairs:
        touches_b = (bm >> u & 1) or (bm >> v & 1)
        spanned = (gm >> u & 1) and (gm >> v & 1)
        out.append(0 if touches_b or spanned else 1)
    return tuple(out)


def monomial_universe(g: Graph) -> list[int]:
    """Vertices owning a monomial: the first part in bipartite mode, else all."""
    if g.bipartition is not None:
        return sorted(g.bipartition[0])
    return list(range(g.n))


def _vertex_monomials(b: CircuitBuilder, g: Graph, idx: NonedgeIndex, vertices) -> list[int]:
    monomials = []
    for v in vertices:
        incident = [b.var(i) for i, (x, y) in enumerate(idx.pairs) if v == x or v == y]
        if incident:
            monomials.append(b.and_tree(incident))
        elif g.bipartition is not None:
            # adjacent to the whole opposite part: the empty AND is constant 1
            monomials.append(b.const(1))
        else:
            raise ValueError(f"vertex {v} touches no nonedge; strip complete stars first")
    return monomials


ThresholdBuilder = Callable[[int, int], Circuit]


def monomial_threshold_circuit(
    g: Graph, idx: NonedgeIndex, k: int, builder: ThresholdBuilder
) -> Circuit:
    """Threshold-k of the vertex monomials, over the nonedge variables.

    Fires exactly when at least k vertices (of the monomial universe) have
    all their incident nonedge variables set, i.e. when the input covers the
    incident-nonedge set of some k-element vertex set.
    """
    universe = monomial_universe(g)
    if not 1 <= k <= len(universe):
        raise ValueError(f"k={k} out of range 1..{len(universe)}")
    b = CircuitBuilder(len(idx))
    monomials = _vertex_monomials(b, g, idx, universe)
    th = builder(len(universe), k)
    return b.build(b.graft(th, monomials))


def induced_clique_circuit(g: Graph, k: int, builder: ThresholdBuilder) -> Circuit:
    """Circuit on one variable per vertex: does the chosen set contain a k-clique?

    Every clique extends to a maximal one, so it suffices to OR, over the
    maximal cliques of size >= k, a threshold-k circuit restricted to that
    clique's variables.  Constant 0 when no maximal clique is large enough.
    """
    if not 1 <= k <= g.n:
        raise ValueError(f"k={k} out of range 1..{g.n}")
    b = CircuitBuilder(g.n)
    qualifying = [c for c in maximal_cliques(g) if len(c) >= k]
    if not qualifying:
        return b.build(b.const(0))
    instances = []
    for members in qualifying:
        th = builder(len(members), k)
        instances.append(b.graft(th, [b.var(v) for v in members]))
    return b.build(b.or_tree(instances))


def monomial_clique_circuit(
    g: Graph, idx: NonedgeIndex, k: int, builder: ThresholdBuilder
) -> Circuit:
    """Induced-k-clique circuit applied to the vertex monomials.

    Equivalent to the OR of monomials over k-cliques only, which is what the
    clique game needs: a clique ``b`` that shares no vertex with a clique
    ``c`` and satisfies the promise always kills every monomial.
    """
    if g.bipartition is not None:
        raise ValueError("clique games need the full nonedge space; drop the bipartition")
    b = CircuitBuilder(len(idx))
    monomials = _vertex_monomials(b, g, idx, range(g.n))
    icc = induced_clique_circuit(g, k, builder)
    return b.build(b.graft(icc, monomials))


# --------------------------------------------------------------------------
# transcripts and the channel


@dataclass(frozen=True)
class TranscriptEntry:
    round: int
    sender: str  # "A" or "B"
    bits: str
    meaning: str


@dataclass
class Transcript:
    entries: list[TranscriptEntry] = field(default_factory=list)

    @property
    def total_bits(self) -> int:
        return sum(len(e.bits) for e in self.entries)

    def to_json_obj(self) -> list[dict]:
        return [
            {"round": e.round, "sender": e.sender, "bits": e.bits, "meaning": e.meaning}
            for e in self.entries
        ]


class _Channel:
    def __init__(self):
        self.transcript = Transcript()

    def send(self, sender: str, bits: str, meaning: str) -> str:
        if sender not in ("A", "B") or not bits or set(bits) - {"0", "1"}:
            raise ValueError("malformed message")
        self.transcript.entries.append(
            TranscriptEntry(len(self.transcript.entries) + 1, sender, bits, meaning)
        )
        return bits


def size_field_width(n: int) -> int:
    """Bits used to announce a set size in 0..n."""
    return n.bit_length()


def vertex_field_width(n: int) -> int:
    """Bits used to name one vertex id in 0..n-1."""
    return (n - 1).bit_length() if n > 1 else 1


def _encode_pair(pair: Pair, n: int) -> str:
    w = vertex_field_width(n)
    return format(pair[0], f"0{w}b") + format(pair[1], f"0{w}b")


def _decode_pair(bits: str, n: int) -> Pair:
    w = vertex_field_width(n)
    u, v = int(bits[:w], 2), int(bits[w:], 2)
    return (u, v) if u < v else (v, u)


# --------------------------------------------------------------------------
# the two party state machines


def _threshold_builder(cfg: GameConfig) -> ThresholdBuilder:
    cache = cfg.circuit_cache.setdefault("thresholds", {})

    def build(m: int, k: int) -> Circuit:
        key = (cfg.builder, m, k, cfg.seed, cfg.depth_factor)
        circ = cache.get(key)
        if circ is None:
            if cfg.builder == "sort":
                circ = build_threshold_sort(m, k)
            elif cfg.builder == "valiant":
                circ = build_threshold_valiant(
                    m,
                    k,
                    seed=cfg.seed,
                    depth_factor=cfg.depth_factor,
                    retries=cfg.retries,
                    verify_budget=cfg.verify_budget,
                )
            else:
                raise ValueError(f"unknown threshold builder {cfg.builder!r}")
            cache[key] = circ
        return circ

    return build


def game_circuit(g: Graph, idx: NonedgeIndex, kind: GameKind, k: int, cfg: GameConfig) -> Circuit:
    """The circuit both parties deterministically rebuild for round k."""
    family = "clique" if kind.name == "clique" else "threshold"
    key = (g, family, k, cfg.builder, cfg.seed, cfg.depth_factor)
    circ = cfg.circuit_cache.get(key)
    if circ is None:
        builder = _threshold_builder(cfg)
        if family == "clique":
            circ = monomial_clique_circuit(g, idx, k, builder)
        else:
            circ = monomial_threshold_circuit(g, idx, k, builder)
        cfg.circuit_cache[key] = circ
    return circ


def _nonedge_index(g: Graph, cfg: GameConfig) -> NonedgeIndex:
    key = ("nonedges", g)
    idx = cfg.circuit_cache.get(key)
    if idx is None:
        idx = nonedges(g)
        cfg.circuit_cache[key] = idx
    return idx


class _Party:
    """One side of a session.  Sees the graph, its own set, and the transcript.

    Alice's target value is 1 (she steers OR gates toward a child that stays
    1 on her vector); Bob's is 0 (he steers AND gates toward a child that
    stays 0 on his).  Preference goes to the left child, and a bit is sent
    even when the choice is forced, so both cursors advance in lockstep from
    the transcript alone.
    """

    def __init__(self, role: str, g: Graph, idx: NonedgeIndex, own: frozenset, kind: GameKind, cfg: GameConfig):
        self.role = role
        self.target = 1 if role == "A" else 0
        self.g = g
        self.idx = idx
        self.own = own
        self.kind = kind
        self.cfg = cfg
        self.k: int | None = None
        self.circuit: Circuit | None = None
        self.vals: list[int] | None = None
        self.cursor: int | None = None
        self.answer: Pair | None = None

    # handshake -------------------------------------------------------
    def clique_flag(self) -> str:
        return "1" if self.g.is_clique(self.own) else "0"

    def own_nonedge_bits(self) -> str:
        pair = find_nonedge_within(self.g, self.own)
        assert pair is not None
        return _encode_pair(pair, self.g.n)

    def accept_nonedge_bits(self, bits: str) -> None:
        self.answer = _decode_pair(bits, self.g.n)

    # size announcement ------------------------------------------------
    def size_bits(self) -> str:
        return format(len(self.own), f"0{size_field_width(self.g.n)}b")

    def receive_size(self, bits: str) -> None:
        self.k = int(bits, 2)

    # traversal ---------------------------------------------------------
    def _vector(self) -> tuple[int, ...]:
        if self.role == "A":
            return incidence_vector(self.idx, self.own)
        if self.kind.name == "relaxed-clique":
            return relaxed_non_incidence_vector(self.g, self.idx, self.own)
        return non_incidence_vector(self.idx, self.own)

    def prepare(self) -> None:
        assert self.k is not None
        self.circuit = game_circuit(self.g, self.idx, self.kind, self.k, self.cfg)
        vec = self._vector()
        key = (id(self.circuit), vec)
        vals = self.cfg.eval_cache.get(key)
        if vals is None:
            vals = node_values(self.circuit, vec)
            self.cfg.eval_cache[key] = vals
        self.vals = vals
        self.cursor = self.circuit.output
        if self.vals[self.cursor] != self.target:
            side = "first" if self.role == "A" else "second"
            raise SeparationError(
                f"separation failure: the {side} party's vector evaluates to "
                f"{self.vals[self.cursor]}, expected {self.target}"
            )

    def at_gate(self) -> bool:
        return self.circuit.gates[self.cursor][0] in (AND, OR)

    def gate_op(self) -> str:
        return self.circuit.gates[self.cursor][0]

    def descend_bit(self) -> str:
        gate = self.circuit.gates[self.cursor]
        return "0" if self.vals[gate[1]] == self.target else "1"

    def apply_descend(self, bit: str) -> None:
        # the choosing party preserves its own invariant; the other party's
        # follows from gate semantics, so this must hold on every step
        gate = self.circuit.gates[self.cursor]
        self.cursor = gate[1] if bit == "0" else gate[2]
        if self.vals[self.cursor] != self.target:
            raise CircuitInvariantError("traversal invariant broke; circuit rules are wrong")

    def leaf_nonedge(self) -> Pair:
        gate = self.circuit.gates[self.cursor]
        if gate[0] == CONST:
            raise CircuitInvariantError("reached a constant leaf during traversal")
        assert gate[0] == VAR
        self.answer = self.idx.pair(gate[1])
        return self.answer


# --------------------------------------------------------------------------
# standalone traversal (testable without the session plumbing)


def find_separating_variable(
    c: Circuit, one_vec: Sequence[int], zero_vec: Sequence[int], channel=None
) -> int:
    """Backward walk of a monotone circuit separating two assignments.

    Requires ``c`` to evaluate 1 on ``one_vec`` and 0 on ``zero_vec``; each
    AND gate costs one bit chosen by the zero side, each OR gate one bit by
    the one side, so at most depth(c) bits.  Returns a variable index where
    the first assignment has 1 and the second 0.
    """
    ones = node_values(c, one_vec)
    zeros = node_values(c, zero_vec)
    if ones[c.output] != 1 or zeros[c.output] != 0:
        raise SeparationError(
            "separation failure: assignments are not separated by this circuit"
        )
    cur = c.output
    while True:
        gate = c.gates[cur]
        if gate[0] == VAR:
            return gate[1]
        if gate[0] == CONST:
            raise CircuitInvariantError("reached a constant leaf during traversal")
        if gate[0] == AND:
            bit = 0 if zeros[gate[1]] == 0 else 1
            sender = "B"
        else:
            bit = 0 if ones[gate[1]] == 1 else 1
            sender = "A"
        if channel is not None:
            channel.send(sender, str(bit), "descend")
        cur = gate[1] if bit == 0 else gate[2]


# --------------------------------------------------------------------------
# outcome, validation, play


@dataclass(frozen=True)
class Outcome:
    kind: GameKind
    graph: Graph
    a: frozenset
    b: frozenset
    nonedge: Pair
    alice_answer: Pair
    bob_answer: Pair
    kind_of_answer: str
    transcript: Transcript
    promise_verified: bool
    edge_bound: Optional[int]
    builder: str
    seed: int

    def to_json_obj(self) -> dict:
        g = self.graph
        obj = {
            "game": self.kind.name,
            "n": g.n,
            "a": sorted(g.labels[v] for v in self.a),
            "b": sorted(g.labels[v] for v in self.b),
            "builder": self.builder,
            "seed": self.seed,
            "entries": self.transcript.to_json_obj(),
            "total_bits": self.transcript.total_bits,
            "nonedge": sorted(g.labels[v] for v in self.nonedge),
            "kind_of_answer": self.kind_of_answer,
            "promise_verified": self.promise_verified,
        }
        if self.kind.name == "edge-biclique":
            obj["edge_bound"] = self.edge_bound
        return obj


def classify_answer(g: Graph, a: frozenset, b: frozenset, pair: Pair) -> str:
    u, v = pair
    if u in a and v in a:
        return "within_a"
    if u in b and v in b:
        return "within_b"
    if (u in a and v in b) or (u in b and v in a):
        return "crossing"
    return "to_common_neighbor"


def legal_answer(kind: GameKind, g: Graph, a: frozenset, b: frozenset, pair: Pair) -> bool:
    """Referee predicate: is ``pair`` a valid answer for this game?"""
    u, v = min(pair), max(pair)
    if (u, v) in g.edges or u == v:
        return False
    if kind.crossing_goal:
        return (u in a and v in b) or (u in b and v in a)
    within = u in (a | b) and v in (a | b)
    if kind.name == "clique" or within:
        return within
    if not b:
        return False
    gamma = common_neighbors(g, b)
    return (u in a and v in gamma) or (v in a and u in gamma)


def _check_structure(kind: GameKind, g: Graph, a: frozenset, b: frozenset) -> None:
    for v in a | b:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} out of range")
    if a & b:
        raise PromiseViolationError("rejected input: the two sets intersect")
    if has_complete_star(g):
        raise ValueError("graph has a complete star; apply strip_stars first")
    if kind.has_handshake and g.bipartition is not None:
        raise ValueError(
            "clique games need the full nonedge space; load the graph without "
            "the bipartition declaration"
        )
    if kind.crossing_goal:
        if not a or not b:
            raise PromiseViolationError("rejected input: both sets must be nonempty")
        if g.bipartition is not None:
            left, right = g.bipartition
            if not a <= left:
                raise PromiseViolationError("rejected input: a must lie in the first part")
            if not b <= right:
                raise PromiseViolationError("rejected input: b must lie in the second part")


def _check_promise(
    kind: GameKind, g: Graph, a: frozenset, b: frozenset, cfg: GameConfig
) -> tuple[bool, Optional[int]]:
    """Best-effort promise validation.

    Returns (verified, resolved edge bound).  Provable violations raise;
    instances beyond the oracle limit are trusted and flagged unverified.
    """
    feasible = g.n <= cfg.oracle_limit
    if kind.name == "edge-biclique":
        bound = kind.edge_bound
        if bound is None:
            if not feasible:
                raise ValueError(
                    "edge-biclique needs an explicit edge bound beyond the oracle limit"
                )
            bound = max_edge_biclique(g)
        if len(a) * len(b) <= bound:
            raise PromiseViolationError(
                f"rejected input: |a|*|b| = {len(a) * len(b)} <= edge bound {bound}"
            )
        if feasible and bound < max_edge_biclique(g):
            raise PromiseViolationError(
                f"rejected input: edge bound {bound} is below the true maximum "
                f"edge biclique {max_edge_biclique(g)}"
            )
        return feasible, bound
    if not feasible:
        return False, None
    if kind.name == "biclique":
        threshold = max_biclique_size(g)
    else:
        threshold = max_clique_size(g)
    if len(a) + len(b) <= threshold:
        raise PromiseViolationError(
            f"rejected input: |a|+|b| = {len(a) + len(b)} <= {threshold}"
        )
    return True, None


def play(
    kind: GameKind,
    g: Graph,
    a: Iterable[int],
    b: Iterable[int],
    config: Optional[GameConfig] = None,
) -> Outcome:
    """Run one full game between two information-separated parties.

    Phases: optional clique handshake (clique/relaxed games), Alice's
    fixed-width size announcement, deterministic circuit construction on
    both sides, the one-bit-per-gate backward traversal, and the shared
    mapping of the reached variable back to a nonedge.  The returned
    outcome carries both parties' independently decoded answers.
    """
    cfg = config if config is not None else GameConfig()
    a = frozenset(a)
    b = frozenset(b)
    _check_structure(kind, g, a, b)
    promise_verified, edge_bound = _check_promise(kind, g, a, b, cfg)
    idx = _nonedge_index(g, cfg)
    ch = _Channel()
    alice = _Party("A", g, idx, a, kind, cfg)
    bob = _Party("B", g, idx, b, kind, cfg)

    kind_of_answer = None
    if kind.has_handshake:
        flag = ch.send("A", alice.clique_flag(), "alice-clique-flag")
        if flag == "0":
            bits = ch.send("A", alice.own_nonedge_bits(), "alice-nonedge")
            alice.accept_nonedge_bits(bits)
            bob.accept_nonedge_bits(bits)
            kind_of_answer = "within_a"
        else:
            flag = ch.send("B", bob.clique_flag(), "bob-clique-flag")
            if flag == "0":
                bits = ch.send("B", bob.own_nonedge_bits(), "bob-nonedge")
                alice.accept_nonedge_bits(bits)
                bob.accept_nonedge_bits(bits)
                kind_of_answer = "within_b"

    if kind_of_answer is None:
        bits = ch.send("A", alice.size_bits(), "set-size")
        alice.receive_size(bits)
        bob.receive_size(bits)
        try:
            alice.prepare()
            bob.prepare()
            while alice.at_gate():
                if alice.gate_op() == AND:
                    bit = ch.send("B", bob.descend_bit(), "descend")
                else:
                    bit = ch.send("A", alice.descend_bit(), "descend")
                alice.apply_descend(bit)
                bob.apply_descend(bit)
            alice.leaf_nonedge()
            bob.leaf_nonedge()
        except SeparationError as exc:
            raise SeparationError(f"{exc} [game={kind.name}, k={alice.k}]") from None
        kind_of_answer = classify_answer(g, a, b, alice.answer)

    if alice.answer != bob.answer:
        raise CircuitInvariantError("the parties decoded different answers")
    nonedge = alice.answer
    if nonedge in g.edges:
        raise CircuitInvariantError("the agreed pair is an edge, not a nonedge")
    return Outcome(
        kind=kind,
        graph=g,
        a=a,
        b=b,
        nonedge=nonedge,
        alice_answer=alice.answer,
        bob_answer=bob.answer,
        kind_of_answer=kind_of_answer,
        transcript=ch.transcript,
        promise_verified=promise_verified,
        edge_bound=edge_bound,
        builder=cfg.builder,
        seed=cfg.seed,
    )


def replay_transcript(
    g: Graph,
    kind: GameKind,
    transcript: Transcript | Sequence[TranscriptEntry],
    config: Optional[GameConfig] = None,
) -> Pair:
    """Recover the agreed nonedge from the transcript and public data alone.

    This is the referee's decoder: it sees neither party's set, only the
    bits, so it doubles as a check that the answer really is common
    knowledge.
    """
    cfg = config if config is not None else GameConfig()
    entries = list(transcript.entries if isinstance(transcript, Transcript) else transcript)
    pos = 0

    def take(expected_meaning: str) -> TranscriptEntry:
        nonlocal pos
        if pos >= len(entries) or entries[pos].meaning != expected_meaning:
            raise ValueError(f"transcript malformed at entry {pos + 1}")
        entry = entries[pos]
        pos += 1
        return entry

    if kind.has_handshake:
        if take("alice-clique-flag").bits == "0":
            return _decode_pair(take("alice-nonedge").bits, g.n)
        if take("bob-clique-flag").bits == "0":
            return _decode_pair(take("bob-nonedge").bits, g.n)
    k = int(take("set-size").bits, 2)
    idx = _nonedge_index(g, cfg)
    circ = game_circuit(g, idx, kind, k, cfg)
    cur = circ.output
    while circ.gates[cur][0] in (AND, OR):
        bit = take("descend").bits
        gate = circ.gates[cur]
        cur = gate[1] if bit == "0" else gate[2]
    if pos != len(entries):
        raise ValueError("transcript has trailing entries")
    gate = circ.gates[cur]
    if gate[0] != VAR:
        raise CircuitInvariantError("transcript walks into a constant leaf")
    return idx.pair(gate[1])


def bit_bound(kind: GameKind, g: Graph, config: Optional[GameConfig] = None) -> int:
    """The protocol's own worst-case bit guarantee on this graph.

    Handshake bits (2 for the clique-style games) plus the fixed-width size
    announcement plus the depth of the deepest circuit the protocol could
    traverse.  Computed from the actually constructed circuits, so it is a
    checkable bound rather than an asymptotic claim.
    """
    cfg = config if config is not None else GameConfig()
    idx = _nonedge_index(g, cfg)
    handshake = 2 if kind.has_handshake else 0
    k_max = g.n if kind.name == "clique" else len(monomial_universe(g))
    depths = [game_circuit(g, idx, kind, k, cfg).depth for k in range(1, k_max + 1)]
    return handshake + size_field_width(g.n) + max(depths, default=0)
