"""Exploratory: closed mixed loop of 4 arcs with B->O / O->B junctions."""
import sys, time, pickle
sys.path.insert(0, 'src')
from heptarail.topology import Heptagrid, CENTER
from heptarail.engine import Configuration, step
from heptarail.rules import full_table, canonicalize

g = Heptagrid()
table = full_table()
t0 = time.time()

_balls, _circles = {}, {}

def ball(c, r):
    k = (c, r)
    if k not in _balls:
        _balls[k] = g.ball(c, r)
    return _balls[k]

def circle(c, r):
    k = (c, r)
    if k not in _circles:
        _circles[k] = g.circle(c, r)
    return _circles[k]

def sphere(c, r):
    return {x for x, d in ball(c, r).items() if d == r}


def roles(cell, dmap):
    k = dmap.get(cell)
    if k is None:
        return None
    ring = g.ring(cell)
    inw = [i for i, n in enumerate(ring) if dmap.get(n) == k - 1]
    if not inw or len(inw) > 2:
        return None
    if len(inw) == 1:
        i0 = inw[0]
    else:
        a, b = inw
        if (a + 1) % 7 == b:
            i0 = a
        elif (b + 1) % 7 == a:
            i0 = b
        else:
            return None
    rot = [ring[(i0 + j) % 7] for j in range(7)]
    return {'in': rot[:len(inw)], 'P': rot[len(inw)], 'out': rot[len(inw) + 1:6], 'S': rot[6]}


def b_arc_centers(J, T, b_end, r2):
    out = []
    for C2 in sphere(J, r2 + 1) & sphere(T, r2 + 1) & sphere(b_end, r2):
        ro = roles(T, ball(C2, r2 + 2))
        if ro and ro['S'] == J:
            out.append(C2)
    return sorted(out)


def o_arc_centers(K, P, o1, r3):
    out = []
    for C3 in sphere(K, r3 + 1) & sphere(P, r3 + 1) & sphere(o1, r3):
        ro = roles(P, ball(C3, r3 + 2))
        if ro and ro['P'] == K:
            out.append(C3)
    return sorted(out)


def bo_junctions_near(circ, dmap, i_from, span):
    """(J, T, b_end) for two-inward cells at index i_from+22..i_from+span."""
    n = len(circ)
    out = []
    for k in range(22, span):
        c = circ[(i_from + k) % n]
        ro = roles(c, dmap)
        if ro and len(ro['in']) == 2:
            out.append((c, ro['out'][2], ro['out'][1], k))
    return out


def ob_junctions_near(circ, dmap, i_end, span):
    """(K, P, o1) for two-inward cells at index i_end-22..i_end-span (back)."""
    n = len(circ)
    out = []
    for k in range(22, span):
        c = circ[(i_end - k) % n]
        ro = roles(c, dmap)
        if ro and len(ro['in']) == 2:
            out.append((c, ro['P'], ro['out'][0], k))
    return out


R = 3
d1 = ball(CENTER, R + 3)
circle1 = circle(CENTER, R + 1)
SPAN = 30

solution = None
tried = 0
J1s = bo_junctions_near(circle1, d1, 0, 200)
for J1, T1, b1, _ in J1s[:3]:
    for C2 in b_arc_centers(J1, T1, b1, R):
        d2 = ball(C2, R + 3)
        circ2 = circle(C2, R + 1)
        for K2, P2, o1K2, _ in ob_junctions_near(circ2, d2, circ2.index(T1), SPAN):
            for C3 in o_arc_centers(K2, P2, o1K2, R):
                d3 = ball(C3, R + 3)
                circ3 = circle(C3, R + 1)
                for J2, T2, b2, _ in bo_junctions_near(circ3, d3, circ3.index(P2), SPAN):
                    for C4 in b_arc_centers(J2, T2, b2, R):
                        tried += 1
                        d4 = ball(C4, R + 3)
                        circ4 = circle(C4, R + 1)
                        for K1, P1, o1K1, _ in ob_junctions_near(
                                circ4, d4, circ4.index(T2), SPAN):
                            if d1.get(P1) != R + 1 or d1.get(o1K1) != R:
                                continue
                            rP1 = roles(P1, d1)
                            if rP1 is None or rP1['P'] != K1:
                                continue
                            olen1 = (circle1.index(J1) - circle1.index(P1)) % len(circle1) + 1
                            if olen1 < 22:
                                continue
                            solution = [('O', CENTER, P1, J1), ('B', C2, K2, T1),
                                        ('O', C3, P2, J2), ('B', C4, K1, T2)]
                            break
                        if solution: break
                    if solution: break
                if solution: break
            if solution: break
        if solution: break
    if solution: break

print("%.1fs" % (time.time() - t0), "tried C4:", tried, "solution:", bool(solution))
if not solution:
    sys.exit(1)

cfg = Configuration(g)
for kind, C, start, end in solution:
    d = ball(C, R + 3)
    circ = circle(C, R + 1)
    i_s = circ.index(start)
    cells = [circ[(i_s + k) % len(circ)]
             for k in range((((circ.index(end)) - i_s) % len(circ)) + 1)]
    sup = []
    for c in cells:
        cfg.set(c, 'M')
        for s in roles(c, d)['in']:
            if s not in sup:
                sup.append(s)
    for s in sup:
        cfg.set(s, kind)
    print(f"arc {kind} at {g.address(C)}: track {len(cells)} support {len(sup)}")

def check(cfg):
    bad = {}
    active = set(cfg.cells)
    for c in list(cfg.cells):
        active.update(g.ring(c))
    for c in active:
        cur, word = cfg.get(c), cfg.word(c)
        nxt = table.get(cur, word)
        if nxt is None:
            bad.setdefault((cur, canonicalize(word)[0], 'MISSING'), []).append(c)
        elif nxt != cur:
            bad.setdefault((cur, canonicalize(word)[0], '->' + nxt), []).append(c)
    return bad

bad = check(cfg)
for k, cells in sorted(bad.items()):
    print("BAD", k, len(cells), [g.address(c) for c in cells[:3]])
print("total bad:", sum(len(v) for v in bad.values()), " cells:", len(cfg.cells))
pickle.dump(solution, open('/tmp/loop_solution.pkl', 'wb'))
