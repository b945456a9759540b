"""Self-contained DIMACS CNF(+XOR) solver with SAT-competition output.

A compact pure-Python CDCL solver (watched literals, first-UIP
learning, restarts) that reads a DIMACS file and accepts native ``x``
XOR clause lines (``x 1 2 -3 0``: the XOR of the literals is true).
XOR constraints are not translated to CNF; they are handled by a
Gauss-Jordan propagator over GF(2) bitmask rows, which keeps dense
random parity systems easy (plain CDCL on their CNF encodings blows
up).  When the eliminated system forces or refutes a variable, the
corresponding implied clause is synthesized lazily and handed to the
CDCL core as a reason.

Prints ``s SATISFIABLE``/``s UNSATISFIABLE`` plus ``v`` value lines;
exit code 10 for sat, 20 for unsat, per competition convention.

Intentionally imports nothing heavy so process startup stays cheap:
the external-backend adapter spawns one process per query, and this
module doubles as the XOR-native reference solver in the test suite.

Usage: ``python -m xorcount.minisolve <file.cnf>``
"""

import sys


def parse_file(path):
    num_vars = 0
    clauses = []
    xors = []  # (vars, parity)
    with open(path) as fh:
        for raw in fh:
            line = raw.strip()
            if not line or line.startswith("c"):
                continue
            if line.startswith("p"):
                num_vars = int(line.split()[2])
                continue
            if line.startswith("x"):
                lits = [int(t) for t in line.split()[1:] if int(t) != 0]
                parity = 1
                vs = set()
                for l in lits:
                    if l < 0:
                        parity ^= 1
                    v = abs(l)
                    if v in vs:
                        vs.remove(v)  # duplicates cancel
                    else:
                        vs.add(v)
                xors.append((sorted(vs), parity))
                continue
            lits = []
            for t in line.split():
                l = int(t)
                if l == 0:
                    clauses.append(lits)
                    lits = []
                else:
                    lits.append(l)
            if lits:
                clauses.append(lits)
    return num_vars, clauses, xors


def solve(nv, clauses, xors):
    """CDCL + XOR Gauss search; returns 1-based truth list or None."""
    values = [None] * (nv + 1)
    levels = [0] * (nv + 1)
    reason = [None] * (nv + 1)
    phase = [False] * (nv + 1)
    act = [0.0] * (nv + 1)
    trail = []
    trail_lim = []
    watches = {}
    db = []

    # XOR rows as (variable bitmask, parity); bit v-1 stands for var v
    xor_rows = []
    for vs, parity in xors:
        mask = 0
        for v in vs:
            mask |= 1 << (v - 1)
        if mask == 0:
            if parity == 1:
                return None
            continue
        xor_rows.append((mask, parity))
    assigned_mask = 0
    true_mask = 0

    def lit_true(l):
        v = values[abs(l)]
        return v is not None and v == (l > 0)

    def lit_false(l):
        v = values[abs(l)]
        return v is not None and v != (l > 0)

    def enqueue(l, why):
        nonlocal assigned_mask, true_mask
        v = abs(l)
        values[v] = l > 0
        levels[v] = len(trail_lim)
        reason[v] = why
        trail.append(l)
        assigned_mask |= 1 << (v - 1)
        if l > 0:
            true_mask |= 1 << (v - 1)

    units = []
    for cl in clauses:
        cl = list(dict.fromkeys(cl))
        if any(-l in cl for l in cl):
            continue
        if not cl:
            return None
        if len(cl) == 1:
            units.append(cl[0])
            continue
        ci = len(db)
        db.append(cl)
        watches.setdefault(cl[0], []).append(ci)
        watches.setdefault(cl[1], []).append(ci)

    for l in units:
        if lit_false(l):
            return None
        if values[abs(l)] is None:
            enqueue(l, None)

    qhead = 0

    def propagate():
        nonlocal qhead
        while qhead < len(trail):
            p = trail[qhead]
            qhead += 1
            fl = -p
            wl = watches.get(fl, [])
            i = 0
            while i < len(wl):
                ci = wl[i]
                cl = db[ci]
                if cl[0] == fl:
                    cl[0], cl[1] = cl[1], cl[0]
                other = cl[0]
                if lit_true(other):
                    i += 1
                    continue
                moved = False
                for k in range(2, len(cl)):
                    if not lit_false(cl[k]):
                        cl[1], cl[k] = cl[k], cl[1]
                        wl[i] = wl[-1]
                        wl.pop()
                        watches.setdefault(cl[1], []).append(ci)
                        moved = True
                        break
                if moved:
                    continue
                if lit_false(other):
                    return ci
                enqueue(other, ci)
                i += 1
        return None

    def synth_clause(mask, forced_lit):
        """Implied clause of the XOR row (mask, .) under the current
        assignment: forbids the current pattern on the row's other
        variables together with the negation of forced_lit (or, with
        forced_lit None, the current all-assigned violating pattern).
        Appended to the db without watches; Gauss re-derives its
        propagations, so watches are unnecessary.
        """
        cl = [] if forced_lit is None else [forced_lit]
        skip = 0 if forced_lit is None else abs(forced_lit)
        m = mask
        while m:
            b = m & -m
            m ^= b
            v = b.bit_length()
            if v != skip:
                cl.append(-v if values[v] else v)
        db.append(cl)
        return len(db) - 1

    def gauss_propagate():
        """Eliminate the XOR system over unassigned variables; enqueue
        forced literals, return a conflict clause index or None.
        """
        if not xor_rows:
            return None
        while True:
            rows = list(xor_rows)
            n = len(rows)
            progressed = False
            for i in range(n):
                mask, par = rows[i]
                red = mask & ~assigned_mask
                if red == 0:
                    continue
                pivot = red & -red
                for j in range(n):
                    if j != i and rows[j][0] & pivot:
                        rows[j] = (rows[j][0] ^ mask, rows[j][1] ^ par)
            for mask, par in rows:
                red = mask & ~assigned_mask
                want = par ^ ((mask & true_mask).bit_count() & 1)
                if red == 0:
                    if want:
                        return synth_clause(mask, None)
                elif red & (red - 1) == 0:
                    v = red.bit_length()
                    lit = v if want else -v
                    enqueue(lit, synth_clause(mask, lit))
                    progressed = True
            if not progressed:
                return None
            confl = propagate()
            if confl is not None:
                return confl

    def full_propagate():
        while True:
            confl = propagate()
            if confl is not None:
                return confl
            before = len(trail)
            confl = gauss_propagate()
            if confl is not None:
                return confl
            if len(trail) == before:
                return None

    def analyze(confl):
        nonlocal var_inc
        learnt = []
        seen = set()
        counter = 0
        p = None
        idx = len(trail) - 1
        cur_level = len(trail_lim)
        cl = db[confl]
        while True:
            for q in cl:
                if q == p:
                    continue
                v = abs(q)
                if v not in seen and levels[v] > 0:
                    seen.add(v)
                    act[v] += var_inc
                    if levels[v] == cur_level:
                        counter += 1
                    else:
                        learnt.append(q)
            while abs(trail[idx]) not in seen:
                idx -= 1
            p = trail[idx]
            seen.discard(abs(p))
            counter -= 1
            idx -= 1
            if counter == 0:
                break
            cl = db[reason[abs(p)]]
        learnt.insert(0, -p)
        back = max((levels[abs(q)] for q in learnt[1:]), default=0)
        if len(learnt) > 1:
            k = max(range(1, len(learnt)), key=lambda i: levels[abs(learnt[i])])
            learnt[1], learnt[k] = learnt[k], learnt[1]
        var_inc /= 0.95
        return learnt, back

    def backtrack(level):
        nonlocal qhead, assigned_mask, true_mask
        lim = trail_lim[level]
        for l in trail[lim:]:
            v = abs(l)
            phase[v] = values[v]
            values[v] = None
            assigned_mask &= ~(1 << (v - 1))
            true_mask &= ~(1 << (v - 1))
        del trail[lim:]
        del trail_lim[level:]
        qhead = lim

    var_inc = 1.0
    conflicts = 0
    restart_at = 100
    luby_u = luby_v = 1

    while True:
        confl = full_propagate()
        if confl is not None:
            conflicts += 1
            if not trail_lim:
                return None
            # a Gauss conflict may involve no current-level literal;
            # drop to the highest level actually present first
            top = max((levels[abs(q)] for q in db[confl]), default=0)
            if top == 0:
                return None
            if top < len(trail_lim):
                backtrack(top)
            learnt, back = analyze(confl)
            backtrack(back)
            if len(learnt) == 1:
                enqueue(learnt[0], None)
            else:
                ci = len(db)
                db.append(learnt)
                watches.setdefault(learnt[0], []).append(ci)
                watches.setdefault(learnt[1], []).append(ci)
                enqueue(learnt[0], ci)
            if var_inc > 1e100:
                for v in range(nv + 1):
                    act[v] *= 1e-100
                var_inc *= 1e-100
            continue
        if len(trail) == nv:
            return [values[v] for v in range(nv + 1)]
        if conflicts >= restart_at and trail_lim:
            if (luby_u & -luby_u) == luby_v:
                luby_u += 1
                luby_v = 1
            else:
                luby_v *= 2
            restart_at = conflicts + 100 * luby_v
            backtrack(0)
            continue
        best = max(
            (v for v in range(1, nv + 1) if values[v] is None),
            key=lambda v: act[v],
        )
        trail_lim.append(len(trail))
        enqueue(best if phase[best] else -best, None)


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    if len(argv) != 1:
        print("usage: python -m xorcount.minisolve <file.cnf>", file=sys.stderr)
        return 1
    nv, clauses, xors = parse_file(argv[0])
    model = solve(nv, clauses, xors)
    if model is None:
        print("s UNSATISFIABLE")
        return 20
    print("s SATISFIABLE")
    lits = [v if model[v] else -v for v in range(1, nv + 1)] + [0]
    for i in range(0, len(lits), 20):
        print("v " + " ".join(str(l) for l in lits[i : i + 20]))
    return 10


if __name__ == "__main__":
    sys.exit(main())
