"""Local records for K = F(mu_3, m^(1/3)) over F = Q(zeta_19)^+, m in {2, 7}.

Residue degree of ell in F: order of ell in (Z/19)^x / {+-1}.
At v | ell with q = ell^f, ell not 3:
  ell | m, q = 1 mod 3  -> D = I = C3
  ell | m, q = 2 mod 3  -> D = S3, I = C3, Frobenius a reflection
  ell !| m, q = 1 mod 3 -> D trivial if m is a cube in F_q else C3
  ell !| m, q = 2 mod 3 -> D = C2 (mu_3 adjoins the unramified quadratic)
S3 elements: 0 = 1, 1 = r, 2 = r^2, 3 = s, 4 = s r, 5 = s r^2.
Run with an argument m to print the fixture JSON.
"""
import json
import sys


def order_mod(a, n):
    k, x = 1, a % n
    while x != 1:
        x = x * a % n
        k += 1
    return k


def residue_degree_plus(ell):
    o = order_mod(ell, 19)
    # -1 lies in <ell> exactly when the order is even
    return o // 2 if o % 2 == 0 else o


def record(m, ell, label):
    f = residue_degree_plus(ell)
    q = ell ** f
    rec = {"ell": ell, "q": q, "label": label}
    if ell == 3:
        rec.update(D=[1, 3], I=[1, 3], frobenius=0, partial=True, structure_partial=True)
        return rec
    if m % ell == 0:
        if q % 3 == 1:
            rec.update(D=[1], I=[1], frobenius=0)
        else:
            rec.update(D=[1, 3], I=[1], frobenius=3)
            rec["cubic_annotation"] = {"char": "2dim", "val_mod3": 1, "unit_class": 0}
            rec["quad_annotations"] = [{"char": "sign", "square_class": {"rep": -3}}]
    else:
        if q % 3 == 1:
            cube = pow(m, (q - 1) // 3, ell) == 1
            rec.update(D=[] if cube else [1], I=[], frobenius=0 if cube else 1)
        else:
            rec.update(D=[3], I=[], frobenius=3)
    return rec


def field(m):
    places = []
    counts = {}
    for ell in (7, 2, 3):
        n = 9 // residue_degree_plus(ell)
        counts[ell] = n
        for i in range(n):
            places.append(record(m, ell, f"{ell}{'abcdefghi'[i]}" if n > 1 else str(ell)))
    return {
        "name": f"Q(zeta19)+ (mu3, {m}^(1/3))",
        "note": f"generated by tests/oracles/zeta19_records_oracle.py {m}",
        "group": "S3",
        "base_degree": 9,
        "real_places": 9,
        "ramified": sorted({3} | {l for l in (2, 7) if m % l == 0}),
        "places_above": {str(k): v for k, v in counts.items()},
        "residue_degree": {str(k): residue_degree_plus(k) for k in counts},
        "places": places,
    }


if __name__ == "__main__":
    m = int(sys.argv[1]) if len(sys.argv) > 1 else 2
    print(json.dumps(field(m), indent=2))
