"""Uncapacitated network simplex on a complete graph.

Nodes are ``0..m-1`` with node 0 as the root (the base point).  Every
ordered pair ``(i, j)``, ``i != j``, is an arc of cost ``cost[i][j]``; arcs
are ranked ``i * m + j`` for Bland's rule.  The spanning tree is kept as a
dict ``arc -> flow`` and the parent structure is rebuilt after every pivot,
which is O(m) and fine at the sizes this package targets.
"""

from __future__ import annotations

from collections import deque


def _tree_structure(m, tree, cost):
    adj = [[] for _ in range(m)]
    for arc in tree:
        s, t = arc
        adj[s].append((t, arc))
        adj[t].append((s, arc))
    parent = [-1] * m
    parent_arc = [None] * m
    depth = [0] * m
    pot = [None] * m
    pot[0] = cost[0][0] * 0
    seen = [False] * m
    seen[0] = True
    queue = deque([0])
    while queue:
        p = queue.popleft()
        for q, arc in adj[p]:
            if seen[q]:
                continue
            seen[q] = True
            parent[q], parent_arc[q], depth[q] = p, arc, depth[p] + 1
            # tree arcs are tight: pot[s] - pot[t] == cost[s][t]
            s, t = arc
            pot[q] = pot[p] + cost[s][t] if s == q else pot[p] - cost[s][t]
            queue.append(q)
    return parent, parent_arc, depth, pot


def network_simplex(supply, cost, tol=0):
    """Minimise ``sum cost * flow`` subject to ``out - in == supply``.

    ``supply[0]`` must balance the others.  Returns ``(flows, potentials)``
    where ``flows`` maps arcs to positive flow and the potentials satisfy
    ``pot[i] - pot[j] <= cost[i][j]`` for all arcs (up to ``tol``) with
    ``pot[0] == 0``.
    """
    m = len(supply)
    zero = supply[0] * 0
    tree = {}
    # star at the root
    for v in range(1, m):
        if supply[v] >= 0:
            tree[(v, 0)] = supply[v]
        else:
            tree[(0, v)] = -supply[v]

    while True:
        parent, parent_arc, depth, pot = _tree_structure(m, tree, cost)
        entering = None
        for i in range(m):
            pi, ci = pot[i], cost[i]
            for j in range(m):
                if i != j and ci[j] - pi + pot[j] < -tol:
                    entering = (i, j)
                    break
            if entering:
                break
        if entering is None:
            return {arc: f for arc, f in tree.items() if f > tol}, pot

        i, j = entering
        # cycle orientation follows i -> j, then back from j to i through the tree
        a, b = j, i
        up_j, down_i = [], []
        while a != b:
            if depth[a] >= depth[b]:
                up_j.append(a)
                a = parent[a]
            else:
                down_i.append(b)
                b = parent[b]
        forward, backward = [], []
        for w in up_j:  # traversed w -> parent[w]
            arc = parent_arc[w]
            (forward if arc[0] == w else backward).append(arc)
        for w in down_i:  # traversed parent[w] -> w
            arc = parent_arc[w]
            (forward if arc[1] == w else backward).append(arc)
        if not backward:
            raise RuntimeError("negative-cost cycle in a metric cost matrix")
        theta = min(tree[arc] for arc in backward)
        leaving = min((arc for arc in backward if tree[arc] - theta <= tol), key=lambda arc: arc[0] * m + arc[1])
        for arc in forward:
            tree[arc] += theta
        for arc in backward:
            tree[arc] -= theta
        del tree[leaving]
        tree[entering] = theta if theta > zero else zero


def lexmin_potentials(cost, flows, tol=0):
    """Pointwise-smallest optimal dual with ``pot[0] == 0``.

    Optimal duals are the 1-Lipschitz potentials that stay tight on every
    arc carrying flow.  That is a system of difference constraints whose
    solution set is closed under pointwise min, so the minimum is
    ``-dist(v -> 0)`` in the constraint graph and also the lexicographic
    minimum.  Bellman-Ford on the reversed graph computes it.
    """
    m = len(cost)
    # constraint x_t - x_s <= w  <=>  edge s -> t of weight w; reversed: t -> s
    radj = [[(s, cost[s][t]) for s in range(m) if s != t] for t in range(m)]
    for (s, t) in flows:
        radj[t].append((s, -cost[s][t]))
    zero = cost[0][0] * 0
    h = [None] * m
    h[0] = zero
    for _ in range(m):
        changed = False
        for t in range(m):
            ht = h[t]
            if ht is None:
                continue
            for s, w in radj[t]:
                cand = ht + w
                if h[s] is None or cand < h[s] - tol:
                    h[s] = cand
                    changed = True
        if not changed:
            break
    return [-x for x in h]
