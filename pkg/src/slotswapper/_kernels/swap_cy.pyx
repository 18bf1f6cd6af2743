# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled swap-pass kernel; statement-for-statement twin of swap_py.

Candidate enumeration order and the single randrange(count) call per hop are
identical to the pure-Python kernel, so outputs match bit for bit given the
same random stream.
"""
import numpy as np


def run_pass(st, randrange):
    cdef int m = st.channel_count
    cdef int hp = st.hyper_period
    cdef int[::1] grid = st.grid
    cdef int[::1] tx_slot = st.tx_slot
    cdef int[::1] tx_chan = st.tx_chan
    cdef int[::1] tx_edge = st.tx_edge
    cdef int[::1] tx_inst = st.tx_inst
    cdef int[::1] tx_hop = st.tx_hop
    cdef int[::1] inst_flow = st.inst_flow
    cdef int[::1] rel = st.inst_release
    cdef int[::1] dead = st.inst_deadline
    cdef int[::1] nhops = st.inst_nhops
    cdef int[::1] hop_tx = st.hop_tx
    cdef unsigned char[::1] conf = st.conflict
    cdef int[::1] visit = st.visit
    cdef int H = st.max_hops
    cdef int E = st.edge_count

    cand = np.empty(hp * m + 1, dtype=np.int32)
    cand2 = np.empty(hp * m + 1, dtype=np.int32)
    cdef int[::1] cand_s = cand
    cdef int[::1] cand_c = cand2

    cdef int qi, q, n, h, t, s_slot, s_chan, erow, lb, ub, cnt
    cdef int s2, c2, gbase, o, oq, oh, c3, o2, o3, sbase, orow
    cdef int k, d_slot, d_chan, gi, si
    cdef bint ok

    for qi in range(visit.shape[0]):
        q = visit[qi]
        n = nhops[q]
        for h in range(1, n + 1):
            t = hop_tx[q * H + h - 1]
            s_slot = tx_slot[t]
            s_chan = tx_chan[t]
            erow = tx_edge[t] * E
            # live window: neighbor hops may already have moved this pass
            lb = rel[q] if h == 1 else tx_slot[hop_tx[q * H + h - 2]] + 1
            ub = dead[q] if h == n else tx_slot[hop_tx[q * H + h]] - 1
            cnt = 0
            for s2 in range(lb, ub + 1):
                gbase = (s2 - 1) * m
                for c2 in range(1, m + 1):
                    if s2 == s_slot and c2 == s_chan:
                        continue
                    o = grid[gbase + c2 - 1]
                    if o >= 0:
                        if m == 1:
                            # single channel: swapped cells never share a slot,
                            # only refuse to displace the flow's own hops
                            if inst_flow[tx_inst[o]] == inst_flow[q]:
                                continue
                        elif conf[erow + tx_edge[o]]:
                            continue
                        # displaced occupant must stay valid at the source slot
                        oq = tx_inst[o]
                        if s_slot < rel[oq] or s_slot > dead[oq]:
                            continue
                        oh = tx_hop[o]
                        if oh > 1 and s_slot <= tx_slot[hop_tx[oq * H + oh - 2]]:
                            continue
                        if oh < nhops[oq] and s_slot >= tx_slot[hop_tx[oq * H + oh]]:
                            continue
                    if m > 1:
                        # slot-wide guard: neither mover may land next to a
                        # non-moving transmission that shares one of its nodes
                        ok = True
                        for c3 in range(m):
                            o2 = grid[gbase + c3]
                            if (
                                o2 >= 0
                                and c3 != c2 - 1
                                and o2 != t
                                and conf[erow + tx_edge[o2]]
                            ):
                                ok = False
                                break
                        if ok and o >= 0:
                            sbase = (s_slot - 1) * m
                            orow = tx_edge[o] * E
                            for c3 in range(m):
                                o3 = grid[sbase + c3]
                                if (
                                    o3 >= 0
                                    and o3 != t
                                    and o3 != o
                                    and conf[orow + tx_edge[o3]]
                                ):
                                    ok = False
                                    break
                        if not ok:
                            continue
                    cand_s[cnt] = s2
                    cand_c[cnt] = c2
                    cnt += 1
            # the identity choice is always available, and always last
            cand_s[cnt] = s_slot
            cand_c[cnt] = s_chan
            cnt += 1
            k = randrange(cnt)
            d_slot = cand_s[k]
            d_chan = cand_c[k]
            if d_slot != s_slot or d_chan != s_chan:
                gi = (d_slot - 1) * m + d_chan - 1
                si = (s_slot - 1) * m + s_chan - 1
                o = grid[gi]
                grid[gi] = t
                grid[si] = o
                tx_slot[t] = d_slot
                tx_chan[t] = d_chan
                if o >= 0:
                    tx_slot[o] = s_slot
                    tx_chan[o] = s_chan
