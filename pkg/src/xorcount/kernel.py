"""Conflict-driven clause-learning search kernel.

This is the hot loop of the built-in SAT backend: a CDCL solver with
two-watched-literal propagation, first-UIP clause learning, VSIDS-style
activities with phase saving, and Luby restarts, written against flat
numpy arrays so it can be compiled with numba.

Set the environment variable ``XORCOUNT_NO_NUMBA=1`` before import to
run the same function interpreted (pure numpy fallback); see
``benchmarks/bench_solver.py`` for a comparison of the two paths.

Literal encoding: variable v (1-based outside, 0-based here) maps to
codes 2*v for the positive and 2*v+1 for the negative literal, so
negation is ``code ^ 1`` and the variable is ``code >> 1``.

The clause database is a literal pool ``pool[0:start[nclauses]]`` with
clause i occupying ``pool[start[i]:start[i+1]]``.  Empty clauses must
be filtered out by the caller; unit clauses are fine.
"""

from __future__ import annotations

import os

import numpy as np

NUMBA_ENABLED = os.environ.get("XORCOUNT_NO_NUMBA", "").lower() not in ("1", "true", "yes")

SAT = 1
UNSAT = 0

_RESTART_BASE = 100
_VAR_DECAY = 0.95
_RESCALE_LIMIT = 1e100


def _search(nv, pool_in, start_in, ncl):
    """Decide satisfiability of the loaded clauses.

    Returns (status, model, conflicts); model is a uint8 array of
    length nv (meaningful only when status == SAT).
    """
    model = np.zeros(nv, dtype=np.uint8)
    if nv == 0:
        return SAT, model, 0

    # growable copies of the clause database (learned clauses appended)
    lits_cap = max(64, 2 * len(pool_in))
    cl_cap = max(16, 2 * ncl + 4)
    pool = np.empty(lits_cap, dtype=np.int32)
    pool[: len(pool_in)] = pool_in
    start = np.empty(cl_cap + 1, dtype=np.int32)
    start[: ncl + 1] = start_in[: ncl + 1]
    n_clauses = ncl
    pool_len = start[ncl]

    # watcher linked lists: node 2*c+s watches pool[start[c]+s]
    w_head = np.full(2 * nv, -1, dtype=np.int32)
    w_next = np.empty(2 * cl_cap, dtype=np.int32)

    values = np.full(nv, -1, dtype=np.int8)
    levels = np.zeros(nv, dtype=np.int32)
    reason = np.full(nv, -1, dtype=np.int32)
    trail = np.empty(nv, dtype=np.int32)
    trail_lim = np.zeros(nv + 2, dtype=np.int32)
    phase = np.zeros(nv, dtype=np.int8)
    act = np.zeros(nv, dtype=np.float64)
    seen = np.zeros(nv, dtype=np.uint8)
    learnt = np.empty(nv + 1, dtype=np.int32)

    trail_len = 0
    qhead = 0
    level = 0
    var_inc = 1.0
    conflicts = 0

    # initial attachment; queue unit clauses at level 0
    for ci in range(ncl):
        s = start[ci]
        size = start[ci + 1] - s
        if size == 1:
            lit = pool[s]
            v = lit >> 1
            want = 1 - (lit & 1)
            if values[v] == -1:
                values[v] = want
                levels[v] = 0
                reason[v] = ci
                trail[trail_len] = lit
                trail_len += 1
            elif values[v] != want:
                return UNSAT, model, conflicts
        else:
            node = 2 * ci
            lit0 = pool[s]
            lit1 = pool[s + 1]
            w_next[node] = w_head[lit0]
            w_head[lit0] = node
            w_next[node + 1] = w_head[lit1]
            w_head[lit1] = node + 1

    restart_limit = _RESTART_BASE
    luby_u = 1
    luby_v = 1
    conflicts_at_restart = 0

    while True:
        # ---- propagate ----
        confl = -1
        while qhead < trail_len:
            p = trail[qhead]
            qhead += 1
            fl = p ^ 1  # literal that just became false
            prev = -1
            node = w_head[fl]
            while node != -1:
                nxt = w_next[node]
                ci = node >> 1
                slot = node & 1
                s = start[ci]
                e = start[ci + 1]
                other = pool[s + (1 - slot)]
                ov = other >> 1
                otruth = -1
                if values[ov] != -1:
                    otruth = values[ov] ^ (other & 1)
                if otruth == 1:
                    prev = node
                    node = nxt
                    continue
                moved = False
                for k in range(s + 2, e):
                    q = pool[k]
                    qv = q >> 1
                    if values[qv] == -1 or (values[qv] ^ (q & 1)) == 1:
                        # move watch from fl to q
                        pool[s + slot] = q
                        pool[k] = fl
                        if prev == -1:
                            w_head[fl] = nxt
                        else:
                            w_next[prev] = nxt
                        w_next[node] = w_head[q]
                        w_head[q] = node
                        moved = True
                        break
                if moved:
                    node = nxt
                    continue
                if otruth == 0:
                    confl = ci
                    break
                # unit: enqueue other
                values[ov] = 1 - (other & 1)
                levels[ov] = level
                reason[ov] = ci
                trail[trail_len] = other
                trail_len += 1
                prev = node
                node = nxt
            if confl != -1:
                break

        if confl != -1:
            conflicts += 1
            if level == 0:
                return UNSAT, model, conflicts

            # ---- analyze (first-UIP) ----
            learnt_len = 1  # slot 0 reserved for the asserting literal
            counter = 0
            p = -1
            idx = trail_len - 1
            cur = confl
            while True:
                s = start[cur]
                e = start[cur + 1]
                for k in range(s, e):
                    q = pool[k]
                    if q == p:
                        continue
                    qv = q >> 1
                    if seen[qv] == 0 and levels[qv] > 0:
                        seen[qv] = 1
                        act[qv] += var_inc
                        if levels[qv] == level:
                            counter += 1
                        else:
                            learnt[learnt_len] = q
                            learnt_len += 1
                while seen[trail[idx] >> 1] == 0:
                    idx -= 1
                p = trail[idx]
                pv = p >> 1
                seen[pv] = 0
                counter -= 1
                idx -= 1
                if counter == 0:
                    break
                cur = reason[pv]
            learnt[0] = p ^ 1

            # backtrack level = highest level among the tail literals
            back = 0
            max_pos = 1
            for k in range(1, learnt_len):
                lv = levels[learnt[k] >> 1]
                if lv > back:
                    back = lv
                    max_pos = k
            if learnt_len > 1:
                tmp = learnt[1]
                learnt[1] = learnt[max_pos]
                learnt[max_pos] = tmp
            for k in range(1, learnt_len):
                seen[learnt[k] >> 1] = 0

            # rescale activities if needed, then decay
            if act[learnt[0] >> 1] > _RESCALE_LIMIT or var_inc > _RESCALE_LIMIT:
                for v in range(nv):
                    act[v] *= 1e-100
                var_inc *= 1e-100
            var_inc /= _VAR_DECAY

            # ---- backtrack ----
            # trail_lim[L] marks the first assignment of decision level L;
            # keeping levels <= back means popping down to trail_lim[back+1]
            lim = trail_lim[back + 1]
            for k in range(lim, trail_len):
                v = trail[k] >> 1
                phase[v] = values[v]
                values[v] = -1
            trail_len = lim
            qhead = lim
            level = back

            # ---- learn and assert ----
            alit = learnt[0]
            av = alit >> 1
            if learnt_len == 1:
                values[av] = 1 - (alit & 1)
                levels[av] = 0
                reason[av] = -1
                trail[trail_len] = alit
                trail_len += 1
            else:
                if n_clauses + 1 > cl_cap:
                    cl_cap *= 2
                    new_start = np.empty(cl_cap + 1, dtype=np.int32)
                    new_start[: n_clauses + 1] = start[: n_clauses + 1]
                    start = new_start
                    new_wnext = np.empty(2 * cl_cap, dtype=np.int32)
                    new_wnext[: 2 * n_clauses] = w_next[: 2 * n_clauses]
                    w_next = new_wnext
                while pool_len + learnt_len > lits_cap:
                    lits_cap *= 2
                    new_pool = np.empty(lits_cap, dtype=np.int32)
                    new_pool[:pool_len] = pool[:pool_len]
                    pool = new_pool
                ci = n_clauses
                s = pool_len
                for k in range(learnt_len):
                    pool[s + k] = learnt[k]
                pool_len += learnt_len
                n_clauses += 1
                start[n_clauses] = pool_len
                node = 2 * ci
                w_next[node] = w_head[learnt[0]]
                w_head[learnt[0]] = node
                w_next[node + 1] = w_head[learnt[1]]
                w_head[learnt[1]] = node + 1
                values[av] = 1 - (alit & 1)
                levels[av] = level
                reason[av] = ci
                trail[trail_len] = alit
                trail_len += 1
            continue

        # ---- no conflict ----
        if trail_len == nv:
            for v in range(nv):
                model[v] = values[v]
            return SAT, model, conflicts

        if conflicts - conflicts_at_restart >= restart_limit and level > 0:
            # Luby restart schedule
            if (luby_u & -luby_u) == luby_v:
                luby_u += 1
                luby_v = 1
            else:
                luby_v *= 2
            restart_limit = _RESTART_BASE * luby_v
            conflicts_at_restart = conflicts
            lim = trail_lim[1]
            for k in range(lim, trail_len):
                v = trail[k] >> 1
                phase[v] = values[v]
                values[v] = -1
            trail_len = lim
            qhead = lim
            level = 0
            continue

        # ---- decide ----
        best = -1
        best_act = -1.0
        for v in range(nv):
            if values[v] == -1 and act[v] > best_act:
                best = v
                best_act = act[v]
        level += 1
        trail_lim[level] = trail_len
        dlit = 2 * best + (1 - phase[best])
        values[best] = phase[best]
        levels[best] = level
        reason[best] = -1
        trail[trail_len] = dlit
        trail_len += 1


if NUMBA_ENABLED:
    import numba

    search = numba.njit(cache=True, nogil=True)(_search)
else:
    search = _search
