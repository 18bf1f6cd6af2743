"""Pure-Python swap-pass kernel.

Reference implementation of the per-hyper-period randomization pass. The
compiled twin in swap_cy.pyx mirrors this loop statement for statement; both
enumerate candidate cells in ascending (slot, channel) order, append the
source cell last, and draw exactly one randrange(count) per hop, so the two
backends produce identical schedules from identical random streams.
"""
from __future__ import annotations


def run_pass(st, randrange) -> None:
    """Randomize `st` in place, one uniform swap decision per hop.

    `st` is a swap state (see randomizer._build_state); `randrange` is called
    as randrange(n) and must return an int in [0, n).
    """
    m = st.channel_count
    # plain lists are much faster than numpy scalar indexing here
    grid = st.grid.tolist()
    tx_slot = st.tx_slot.tolist()
    tx_chan = st.tx_chan.tolist()
    tx_edge = st.tx_edge.tolist()
    tx_inst = st.tx_inst.tolist()
    tx_hop = st.tx_hop.tolist()
    inst_flow = st.inst_flow.tolist()
    rel = st.inst_release.tolist()
    dead = st.inst_deadline.tolist()
    nhops = st.inst_nhops.tolist()
    hop_tx = st.hop_tx.tolist()
    conf = st.conflict.tolist()
    H = st.max_hops
    E = st.edge_count
    cand_s = [0] * (st.hyper_period * m + 1)
    cand_c = [0] * (st.hyper_period * m + 1)

    for q in st.visit.tolist():
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

    st.grid[:] = grid
    st.tx_slot[:] = tx_slot
    st.tx_chan[:] = tx_chan
