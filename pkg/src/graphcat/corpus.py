"""Finite corpora of small graphs, deduplicated up to isomorphism.

Degree alone does not bound a family of graphs (stars of every arity share
degree one), so every generator here also caps the number of arcs.
"""
from __future__ import annotations

from itertools import combinations_with_replacement, product

from .core import (
    DAGGER,
    Graph,
    build_graph,
    build_standard,
    degree,
    find_isomorphism,
)


def _multigraph_structures(nv: int, ne: int):
    """Connected multigraphs on ``nv`` labeled vertices with ``ne`` edges."""
    slots = list(combinations_with_replacement(range(nv), 2))
    for chosen in combinations_with_replacement(slots, ne):
        adjacency = {i: set() for i in range(nv)}
        for i, j in chosen:
            adjacency[i].add(j)
            adjacency[j].add(i)
        seen = {0}
        stack = [0]
        while stack:
            x = stack.pop()
            for y in adjacency[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        if len(seen) == nv:
            yield chosen


def _assemble(nv: int, edges, legs) -> Graph:
    pairs = []
    nbhd = {str(v + 1): [] for v in range(nv)}
    for idx, (i, j) in enumerate(edges, start=1):
        a, b = f"e{idx}", f"e{idx}{DAGGER}"
        pairs.append((a, b))
        nbhd[str(i + 1)].append(a)
        nbhd[str(j + 1)].append(b)
    for v in range(nv):
        for c in range(legs[v]):
            a = f"x{v + 1}.{c + 1}"
            pairs.append((a, a + DAGGER))
            nbhd[str(v + 1)].append(a)
    return build_graph(pairs, nbhd)


def _dedupe(graphs):
    kept = []
    for g in graphs:
        if not any(find_isomorphism(g, h) for h in kept):
            kept.append(g)
    return kept


def standard_corpus(max_degree: int, max_arcs: int = 8):
    """Connected safe graphs with degree and arc count below the caps, up to iso.

    Standard families come first so the corpus carries recognizable labels.
    """
    seeds = [build_standard("edge")]
    if max_degree >= 1:
        seeds += [build_standard("star", n) for n in range(0, max_arcs // 2 + 1)]
    seeds += [build_standard("loop", n) for n in range(1, max_degree // 2 + 1)]
    seeds += [build_standard("linear", n)
              for n in range(1, (max_degree + 1) // 2 + 1)
              if 2 * (n + 1) <= max_arcs]
    generated = []
    for nv in range(1, max_degree + 1):
        for ne in range(0, max_degree - nv + 1):
            for structure in _multigraph_structures(nv, ne):
                max_total_legs = (max_arcs - 2 * ne) // 2
                for legs in product(range(max_total_legs + 1), repeat=nv):
                    if sum(legs) > max_total_legs:
                        continue
                    generated.append(_assemble(nv, structure, legs))
    corpus = _dedupe(seeds + generated)
    corpus = [g for g in corpus
              if degree(g) <= max_degree and len(g.arcs) <= max_arcs]
    corpus.sort(key=lambda g: (degree(g), len(g.arcs), g.key))
    return corpus


def linear_loop_corpus(limit: int, include_nodeless: bool = False):
    """The linear graphs up to ``limit`` and loops from one to ``limit`` vertices."""
    graphs = [build_standard("linear", n) for n in range(limit + 1)]
    graphs += [build_standard("loop", n) for n in range(1, limit + 1)]
    if include_nodeless:
        graphs.append(build_standard("nodeless_loop"))
    return graphs


def embedding_candidates(graph: Graph):
    """Connected safe graphs that could embed into ``graph``, up to iso.

    Sources of embeddings have at most as many vertices as the target and
    at most two extra arcs per internal edge of the target.
    """
    max_arcs = len(graph.arcs) + 2 * len(graph.internal_edges)
    max_deg = len(graph.vertices) + len(graph.internal_edges)
    pool = standard_corpus(max(max_deg, 1), max_arcs)
    return [h for h in pool if len(h.vertices) <= len(graph.vertices)]


def pool_by_boundary(max_degree: int, max_arcs: int = 8):
    """Corpus graphs grouped by boundary size, for building substitutions."""
    grouped = {}
    for g in standard_corpus(max_degree, max_arcs):
        grouped.setdefault(len(g.boundary), []).append(g)
    return grouped


def random_assignment(base: Graph, grouped, rng):
    """A pseudo-random substitution assignment over the given pool."""
    from .substitution import SubstitutionAssignment

    parts = {}
    for v in sorted(base.vertices):
        size = base.valence(v)
        options = grouped.get(size)
        if not options:
            raise KeyError(f"pool has no graph with boundary size {size}")
        part = rng.choice(options)
        flipped = sorted(base.inv(a) for a in base.neighborhood(v))
        bnd = sorted(part.boundary)
        rng.shuffle(bnd)
        parts[v] = (part, dict(zip(flipped, bnd)))
    return SubstitutionAssignment(base, parts)


def stable_corpus(max_degree: int, max_genus: int, max_arcs: int = 8):
    """Pairs (graph, genus function) passing the stability inequality."""
    pairs = []
    for g in standard_corpus(max_degree, max_arcs):
        verts = sorted(g.vertices)
        for values in product(range(max_genus + 1), repeat=len(verts)):
            genus = dict(zip(verts, values))
            if all(2 * genus[v] + g.valence(v) - 2 > 0 for v in verts):
                pairs.append((g, genus))
    return pairs
