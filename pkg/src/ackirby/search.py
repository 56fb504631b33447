"""Certificate verification and bounded trivialization search.

The search works on canonical classes (presentations up to relator
permutation, inversion and conjugation).  One search step is an
essential move: replacing a relator by its product with a rotated copy
(or inverted rotated copy) of another, stabilizing, destabilizing, or —
in the extended regime — a generator basis change.  Bookkeeping moves
(relator inversion, conjugation, swap) do not change the class and are
implicit; when a certificate is extracted, every class step is expanded
into a legal sequence of atomic moves, so certificates always replay
move by move.

Bounds: max_total_length applies to the canonical (minimal) total
length of every class on a path; max_depth counts essential moves.
"""

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from ackirby import _kernel
from ackirby.presentations import (
    Composite,
    ConjugateRelator,
    Destabilize,
    InvertGenerator,
    InvertRelator,
    MoveError,
    MultiplyRelator,
    NielsenGenerator,
    Presentation,
    Stabilize,
    SwapGenerators,
    SwapRelators,
    apply_move,
    canonical_form,
    is_trivial_presentation,
    move_from_dict,
    move_to_dict,
    presentation_from_dict,
    presentation_to_dict,
    _relator_sort_key,
)
from ackirby.words import Word


@dataclass(frozen=True)
class MoveCertificate:
    """A claimed trivialization: a start presentation and a move sequence."""
    start: Presentation
    moves: tuple


@dataclass
class VerificationReport:
    ok: bool
    steps_applied: int
    failed_step: Optional[int]  # index of the offending move, if replay broke
    reason: Optional[str]
    final: Optional[Presentation]
    trace: Optional[tuple] = None  # (move, presentation-after) pairs when requested

    def __bool__(self):
        return self.ok


@dataclass
class SearchConfig:
    max_total_length: int
    max_depth: int
    move_regime: str = "strict"          # "strict" | "extended"
    dedup_capacity: int = 1_000_000
    workers: int = 1
    strategy: str = "bfs"                # "bfs" | "iddfs"
    priority: object = None              # reserved hook; must stay None


@dataclass
class SearchStats:
    visited: int
    frontier_peak: int
    max_total_length: int
    max_depth: int
    depth_reached: int


@dataclass
class SearchOutcome:
    status: str                          # "found" | "exhausted" | "inconclusive"
    certificate: Optional[MoveCertificate]
    stats: SearchStats

    @property
    def found(self):
        return self.status == "found"


def verify(cert, trace=False):
    """Replay a certificate and check the final presentation is trivial.

    Failures are reported, not raised: the report carries the index of
    the first illegal move, or a reason if the replay ends non-trivially.
    With trace=True the report also carries every intermediate
    presentation as (move, presentation-after) pairs.
    """
    P = cert.start
    log = [] if trace else None
    for idx, move in enumerate(cert.moves):
        try:
            P = apply_move(P, move)
        except (MoveError, ValueError) as exc:
            return VerificationReport(False, idx, idx, str(exc), None,
                                      tuple(log) if trace else None)
        if trace:
            log.append((move, P))
    result = tuple(log) if trace else None
    if is_trivial_presentation(P):
        return VerificationReport(True, len(cert.moves), None, None, P, result)
    return VerificationReport(False, len(cert.moves), None,
                              "final presentation is not trivial", P, result)


# ---------------------------------------------------------------------------
# Class states

def _state_of(P):
    return canonical_form(P)


def _state_total(state):
    return sum(len(r) for r in state[1])


def _is_trivial_state(state):
    rank, rels = state
    return rels == tuple((k,) for k in range(1, rank + 1))


def _subst_tuple(rel, target, replacement):
    out = []
    rep_inv = tuple(-v for v in reversed(replacement))
    for v in rel:
        if v == target:
            out.extend(replacement)
        elif v == -target:
            out.extend(rep_inv)
        else:
            out.append(v)
    return _kernel.reduce_word(tuple(out))


def _successors(state, max_len, regime):
    """Child classes of a state with their edge descriptors, in the fixed
    deterministic enumeration order."""
    rank, rels = state
    total = _state_total(state)
    out = []

    # multiplications: replace relator i by a product with a rotated
    # (possibly inverted) copy of relator j
    for i in range(1, rank + 1):
        ci = rels[i - 1]
        budget = max_len - (total - len(ci))
        for j in range(1, rank + 1):
            if j == i or not rels[j - 1]:
                continue
            for child_rel, (p, eps, q) in _kernel.expand_multiply(ci, rels[j - 1]).items():
                if len(child_rel) > budget:
                    continue
                new_rels = list(rels)
                new_rels[i - 1] = child_rel
                new_rels.sort(key=_relator_sort_key)
                out.append((("mul", i, j, p, eps, q), (rank, tuple(new_rels))))

    # stabilize
    if total + 1 <= max_len:
        new_rels = list(rels)
        new_rels.append((rank + 1,))
        new_rels.sort(key=_relator_sort_key)
        out.append((("stab",), (rank + 1, tuple(new_rels))))

    # destabilize
    if rank >= 2:
        for i in range(1, rank + 1):
            r = rels[i - 1]
            if len(r) != 1:
                continue
            k = r[0]  # canonical single-letter relators are positive
            if any(idx != i - 1 and any(abs(v) == k for v in other)
                   for idx, other in enumerate(rels)):
                continue
            new_rels = tuple(
                tuple((1 if v > 0 else -1) * (abs(v) - (abs(v) > k)) for v in other)
                for idx, other in enumerate(rels) if idx != i - 1)
            out.append((("destab", i), (rank - 1, new_rels)))

    if regime == "extended":
        for i in range(1, rank + 1):
            for j in range(1, rank + 1):
                if j == i:
                    continue
                for s in (1, -1):
                    new_rels = sorted(
                        (_kernel.canonical_relator(_subst_tuple(r, i, (i, s * j)))
                         for r in rels),
                        key=_relator_sort_key)
                    child = (rank, tuple(new_rels))
                    if _state_total(child) <= max_len:
                        out.append((("nielsen", i, j, s), child))
        for i in range(1, rank + 1):
            new_rels = sorted(
                (_kernel.canonical_relator(_subst_tuple(r, i, (-i,))) for r in rels),
                key=_relator_sort_key)
            out.append((("invgen", i), (rank, tuple(new_rels))))
        for i in range(1, rank + 1):
            for j in range(i + 1, rank + 1):
                def relabel(v, a=i, b=j):
                    if abs(v) == a:
                        return (1 if v > 0 else -1) * b
                    if abs(v) == b:
                        return (1 if v > 0 else -1) * a
                    return v
                new_rels = sorted(
                    (_kernel.canonical_relator(tuple(relabel(v) for v in r)) for r in rels),
                    key=_relator_sort_key)
                out.append((("swapgen", i, j), (rank, tuple(new_rels))))

    return out


def _expand_chunk(states, max_len, regime):
    """Worker task: expand a chunk of frontier states."""
    return [(state, edge, child)
            for state in states
            for edge, child in _successors(state, max_len, regime)]


# ---------------------------------------------------------------------------
# Certificate expansion: class path -> atomic moves

def _canonicalization_moves(P):
    """Bookkeeping moves bringing P to its canonical representative."""
    moves = []

    def emit(mv, Q):
        moves.append(mv)
        return apply_move(Q, mv)

    for i in range(1, P.rank + 1):
        # cyclically reduce relator i
        r = P.relators[i - 1].letters
        while len(r) >= 2 and r[0] == -r[-1]:
            P = emit(ConjugateRelator(i, -r[0]), P)
            r = P.relators[i - 1].letters
        if not r:
            continue
        target = _kernel.canonical_rotation(r)
        rotations = {r[s:] + r[:s] for s in range(len(r))}
        if target not in rotations:
            P = emit(InvertRelator(i), P)
            r = P.relators[i - 1].letters
        while P.relators[i - 1].letters != target:
            P = emit(ConjugateRelator(i, -P.relators[i - 1].letters[0]), P)
    # sort relators by the canonical order
    for pos in range(1, P.rank + 1):
        best = min(range(pos, P.rank + 1),
                   key=lambda t: _relator_sort_key(P.relators[t - 1].letters))
        if best != pos:
            P = emit(SwapRelators(pos, best), P)
    return moves, P


def _edge_moves(P, edge):
    """Atomic moves realizing a class edge from the canonical
    representative P; returns (moves, presentation after them)."""
    moves = []

    def emit(mv, Q):
        moves.append(mv)
        return apply_move(Q, mv)

    kind = edge[0]
    if kind == "mul":
        _, i, j, p, eps, q = edge
        for _ in range(p):
            P = emit(ConjugateRelator(i, -P.relators[i - 1].letters[0]), P)
        if eps == -1:
            P = emit(InvertRelator(j), P)
        for _ in range(q):
            P = emit(ConjugateRelator(j, -P.relators[j - 1].letters[0]), P)
        P = emit(MultiplyRelator(i, j, "right"), P)
    elif kind == "stab":
        P = emit(Stabilize(), P)
    elif kind == "destab":
        P = emit(Destabilize(edge[1]), P)
    elif kind == "nielsen":
        P = emit(NielsenGenerator(edge[1], edge[2], edge[3]), P)
    elif kind == "invgen":
        P = emit(InvertGenerator(edge[1]), P)
    elif kind == "swapgen":
        P = emit(SwapGenerators(edge[1], edge[2]), P)
    else:
        raise RuntimeError("unknown edge %r" % (kind,))
    return moves, P


def _expand_certificate(start, path):
    """Turn a class-edge path into a replayable atomic certificate."""
    moves, P = _canonicalization_moves(start)
    for edge, child_state in path:
        ms, P = _edge_moves(P, edge)
        moves.extend(ms)
        ms, P = _canonicalization_moves(P)
        moves.extend(ms)
        if _state_of(P) != child_state:
            raise RuntimeError("certificate expansion diverged from the class path")
    return MoveCertificate(start, tuple(moves))


def _reconstruct_path(visited, goal):
    path = []
    state = goal
    while True:
        parent, edge = visited[state]
        if parent is None:
            break
        path.append((edge, state))
        state = parent
    path.reverse()
    return path


# ---------------------------------------------------------------------------
# Search drivers

def _validate_config(start, cfg):
    if cfg.priority is not None:
        raise NotImplementedError("priority-guided search is not implemented")
    if cfg.move_regime not in ("strict", "extended"):
        raise ValueError("move_regime must be 'strict' or 'extended', got %r"
                         % (cfg.move_regime,))
    if cfg.strategy not in ("bfs", "iddfs"):
        raise ValueError("strategy must be 'bfs' or 'iddfs', got %r" % (cfg.strategy,))
    if cfg.max_depth < 0:
        raise ValueError("max_depth must be >= 0")
    if start.total_length() > cfg.max_total_length:
        raise ValueError(
            "max_total_length %d is below the start presentation's total length %d"
            % (cfg.max_total_length, start.total_length()))


def search(start, cfg, progress=None):
    """Bounded-exhaustive search for a trivialization of `start`.

    Returns a SearchOutcome: "found" with a verified certificate,
    "exhausted" when every class within the bounds was explored, or
    "inconclusive" when the dedup table exceeded its capacity.  Outcome
    and visited counts are deterministic for a fixed config, independent
    of the worker count; the certificate itself is deterministic in
    single-frontier mode.

    `progress`, if given, is called as progress(depth, visited, frontier)
    at each depth boundary; it must not influence the search.

    >>> from ackirby.presentations import parse_presentation
    >>> out = search(parse_presentation("2; xY; y"),
    ...              SearchConfig(max_total_length=8, max_depth=4))
    >>> out.status
    'found'
    >>> verify(out.certificate).ok
    True
    """
    _validate_config(start, cfg)
    if cfg.strategy == "iddfs":
        return _search_iddfs(start, cfg, progress)
    return _search_bfs(start, cfg, progress)


def _finish_found(start, visited, goal, stats):
    path = _reconstruct_path(visited, goal)
    cert = _expand_certificate(start, path)
    report = verify(cert)
    if not report.ok:
        raise RuntimeError("internal error: found certificate failed to verify: %s"
                           % (report.reason,))
    return SearchOutcome("found", cert, stats)


def _search_bfs(start, cfg, progress=None):
    L, D = cfg.max_total_length, cfg.max_depth
    start_state = _state_of(start)
    visited = {start_state: (None, None)}
    stats = SearchStats(visited=1, frontier_peak=1,
                        max_total_length=L, max_depth=D, depth_reached=0)
    if _is_trivial_state(start_state):
        return SearchOutcome("found", MoveCertificate(start, ()), stats)

    frontier = [start_state]
    depth = 0
    pool = ProcessPoolExecutor(max_workers=cfg.workers) if cfg.workers > 1 else None
    try:
        while frontier and depth < D:
            depth += 1
            if pool is not None and len(frontier) > 64:
                size = max(1, (len(frontier) + 4 * cfg.workers - 1) // (4 * cfg.workers))
                chunks = [frontier[k:k + size] for k in range(0, len(frontier), size)]
                results = pool.map(_expand_chunk, chunks,
                                   itertools.repeat(L), itertools.repeat(cfg.move_regime))
                expansion = itertools.chain.from_iterable(results)
            else:
                expansion = _expand_chunk(frontier, L, cfg.move_regime)

            found = None
            new_states = []
            for parent, edge, child in expansion:
                if child in visited:
                    continue
                visited[child] = (parent, edge)
                new_states.append(child)
                if found is None and _is_trivial_state(child):
                    found = child

            stats.visited = len(visited)
            stats.frontier_peak = max(stats.frontier_peak, len(new_states))
            stats.depth_reached = depth
            if progress is not None:
                progress(depth, len(visited), len(new_states))
            if found is not None:
                return _finish_found(start, visited, found, stats)
            # capacity is a soft ceiling checked at level boundaries so the
            # outcome stays deterministic across worker counts
            if len(visited) > cfg.dedup_capacity:
                return SearchOutcome("inconclusive", None, stats)
            frontier = new_states
        return SearchOutcome("exhausted", None, stats)
    finally:
        if pool is not None:
            pool.shutdown()


def _search_iddfs(start, cfg, progress=None):
    """Iterative deepening over the same class graph; sequential only."""
    L, D = cfg.max_total_length, cfg.max_depth
    start_state = _state_of(start)
    stats = SearchStats(visited=1, frontier_peak=1,
                        max_total_length=L, max_depth=D, depth_reached=0)
    if _is_trivial_state(start_state):
        return SearchOutcome("found", MoveCertificate(start, ()), stats)

    for limit in range(1, D + 1):
        table = {start_state: 0}
        # frame: [state, depth, successor iterator, edge that led here]
        frames = [[start_state, 0, iter(_successors(start_state, L, cfg.move_regime)), None]]
        stats.frontier_peak = max(stats.frontier_peak, 1)
        while frames:
            state, depth, it, _ = frames[-1]
            step = next(it, None)
            if step is None:
                frames.pop()
                continue
            edge, child = step
            if depth + 1 > limit:
                continue
            prev = table.get(child)
            if prev is not None and prev <= depth + 1:
                continue
            table[child] = depth + 1
            if len(table) > cfg.dedup_capacity:
                stats.visited = len(table)
                stats.depth_reached = limit
                return SearchOutcome("inconclusive", None, stats)
            if _is_trivial_state(child):
                path = [(frames[t + 1][3], frames[t + 1][0])
                        for t in range(len(frames) - 1)]
                path.append((edge, child))
                visited = {start_state: (None, None)}
                for (e, s), (pe, ps) in zip(path, [(None, start_state)] + path[:-1]):
                    visited[s] = (ps, e)
                stats.visited = len(table)
                stats.depth_reached = depth + 1
                return _finish_found(start, visited, child, stats)
            frames.append([child, depth + 1,
                           iter(_successors(child, L, cfg.move_regime)), edge])
            stats.frontier_peak = max(stats.frontier_peak, len(frames))
        stats.visited = len(table)
        stats.depth_reached = limit
        if progress is not None:
            progress(limit, len(table), len(frames))
    return SearchOutcome("exhausted", None, stats)


def hybrid_trivialize(start, prefix, cfg, progress=None):
    """Replay a certificate prefix, then search from its endpoint.

    A Found outcome carries the concatenated, end-to-end certificate.
    Raises MoveError if the prefix does not replay legally from start.
    """
    if prefix.start != start:
        raise MoveError("prefix certificate starts at a different presentation")
    P = start
    for move in prefix.moves:
        P = apply_move(P, move)
    if is_trivial_presentation(P):
        stats = SearchStats(visited=1, frontier_peak=1,
                            max_total_length=cfg.max_total_length,
                            max_depth=cfg.max_depth, depth_reached=0)
        return SearchOutcome("found", MoveCertificate(start, tuple(prefix.moves)), stats)
    out = search(P, cfg, progress)
    if out.found:
        cert = MoveCertificate(start, tuple(prefix.moves) + tuple(out.certificate.moves))
        report = verify(cert)
        if not report.ok:
            raise RuntimeError("internal error: hybrid certificate failed to verify: %s"
                               % (report.reason,))
        return SearchOutcome("found", cert, out.stats)
    return out


# ---------------------------------------------------------------------------
# Serialization

def certificate_to_dict(cert):
    return {"start": presentation_to_dict(cert.start),
            "moves": [move_to_dict(m) for m in cert.moves]}


def certificate_from_dict(doc):
    return MoveCertificate(presentation_from_dict(doc["start"]),
                           tuple(move_from_dict(m) for m in doc["moves"]))


def outcome_to_dict(outcome):
    doc = {"status": outcome.status,
           "stats": {"visited": outcome.stats.visited,
                     "frontier_peak": outcome.stats.frontier_peak,
                     "max_total_length": outcome.stats.max_total_length,
                     "max_depth": outcome.stats.max_depth,
                     "depth_reached": outcome.stats.depth_reached}}
    doc["certificate"] = (certificate_to_dict(outcome.certificate)
                          if outcome.certificate is not None else None)
    return doc
