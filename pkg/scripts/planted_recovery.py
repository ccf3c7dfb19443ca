"""Peel synthetic mixtures with planted clusters and tabulate what comes back."""
import argparse

import numpy as np

from tcarank import generate_synthetic, peel


def run(n_runs, noise_frac, seed0):
    exact = member = 0
    nz_all = nz_routed = 0
    for seed in range(n_runs):
        rng = np.random.default_rng(seed0 + seed)
        d1, d2 = [(4, 6), (5, 5)][seed % 2]
        c = int(rng.integers(2, 9))
        sizes = rng.integers(10, 80, size=c)
        spec = [(a + 1, int(s)) for a, s in enumerate(sizes)]
        noise = int(round(noise_frac * sizes.sum() / (1 - noise_frac)))
        syn = generate_synthetic(d1, d2, spec, seed=seed, noise=noise)
        res = peel(syn.profile)
        got = {c.alpha: set(c.voter_ids) for c in res.groups[0].clusters} if res.groups else {}
        ok_size = all(len(got.get(c.alpha, ())) == c.size for c in syn.clusters)
        ok_member = all(set(c.voter_ids) <= got.get(c.alpha, set()) for c in syn.clusters)
        nz = set(syn.noise_ids)
        routed = len(nz & set(res.noisy))
        nz_all += len(nz)
        nz_routed += routed
        exact += ok_size
        member += ok_member
        print(f"{seed:3d} ({d1},{d2}) clusters={c} noise={len(nz):3d} "
              f"routed={routed / max(len(nz), 1):6.1%} exact={ok_size} members={ok_member}")
    print(f"\nexact sizes {exact}/{n_runs}, memberships {member}/{n_runs}, "
          f"noise routed {nz_routed / nz_all:.2%}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--runs", type=int, default=50)
    ap.add_argument("--noise", type=float, default=0.05)
    ap.add_argument("--seed", type=int, default=1000)
    a = ap.parse_args()
    run(a.runs, a.noise, a.seed)
