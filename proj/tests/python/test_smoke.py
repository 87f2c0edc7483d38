import json
import math

import crpldp

M1 = json.dumps({
    "dim": 1,
    "p_terminate": 0.5,
    "tau": {"family": "det", "param": 1.0},
    "zeta": {"a": [1.0], "b": [0.0], "sigma": [0.0]},
    "v": {"c0": 0.0, "c1": 0.0},
})
M3 = json.dumps({
    "dim": 1,
    "p_terminate": 0.0,
    "tau": {"family": "exp", "param": 1.0},
    "zeta": {"a": [0.0], "b": [0.0], "sigma": [1.0]},
    "v": {"c0": 0.0, "c1": 0.0},
})


def test_law_roundtrip():
    law = crpldp.JumpLaw.from_json(M1)
    assert law.dim == 1
    assert law.p_terminate == 0.5
    back = crpldp.JumpLaw.from_json(law.to_json())
    assert back.mean_tau_finite() == 1.0


def test_cumulant_and_rates():
    law = crpldp.JumpLaw.from_json(M1)
    assert math.isclose(crpldp.eval_A(law, 0.0, [0.0]), math.log(0.5))
    assert math.isclose(crpldp.D(law, [1.0]), math.log(2.0), rel_tol=1e-7)
    assert crpldp.D(law, [0.5]) == math.inf
    assert math.isclose(crpldp.D_gamma(law, [0.5], 0.0), 0.5 * math.log(2.0), rel_tol=1e-7)
    g = crpldp.JumpLaw.from_json(M3)
    assert math.isclose(crpldp.A_of_mu(g, [1.0]), math.exp(0.5) - 1.0, rel_tol=1e-9)
    assert math.isclose(crpldp.D(g, [1.0]), 0.42522515298450947, rel_tol=1e-6)
    assert math.isclose(crpldp.Lambda(g, 1.0, [1.0]), 0.5, rel_tol=1e-9)
    assert crpldp.lambda_plus(g) == 1.0


def test_monte_carlo():
    law = crpldp.JumpLaw.from_json(M1)
    box = crpldp.Region.box([0.8], [0.9])
    est = crpldp.estimate_tilted(law, 3.5, box, 1000, 17)
    assert math.isclose(est.log_value, math.log(0.125), rel_tol=1e-9)
    a = crpldp.estimate_unnormalized(law, 3.5, box, 5000, 3)
    b = crpldp.estimate_unnormalized(law, 3.5, box, 5000, 3)
    assert a.log_value == b.log_value
    rate = crpldp.empirical_rate(law, crpldp.Region.box([0.45], [0.55]),
                                 [40.0, 80.0, 120.0, 160.0], 2000, 9)
    assert math.isclose(rate.slope, -0.45 * math.log(2.0), rel_tol=2e-3)


def test_identity_report():
    law = crpldp.JumpLaw.from_json(M3)
    rows = crpldp.identity_report(law, 1e-5)
    assert len(rows) >= 8
    assert all(r["pass"] for r in rows)
