import json

import pytest

from oracles import su_frobenius_schur
from realverlinde.errors import InputError, ValidationError
from realverlinde.fusion_ring import fusion_table, level_weights
from realverlinde.real_structure import (
    RealInvolutionDatum,
    apply_sigma_plus,
    classify,
    epsilon,
    involution_from_config,
    is_fixed,
    load_involution_config,
    preset,
    validate,
)
from realverlinde.root_system import build_root_datum, conjugate_weight

A1, A2, A3, A4 = (build_root_datum(f"A{n}") for n in range(1, 5))


def test_preset_examples():
    inv = preset(A1, "trivial_involution")
    assert inv.sigma_plus == (0,)
    assert epsilon(inv, (1,)) == -1 and epsilon(inv, (2,)) == 1
    q = preset(A3, "su_even_quaternionic")
    assert [epsilon(q, w) for w in [(1, 0, 0), (0, 1, 0), (0, 0, 1)]] == [-1, 1, -1]
    t = preset(A2, "trivial_involution")
    assert apply_sigma_plus(t, (1, 0)) == (0, 1)
    assert epsilon(t, (1, 1)) == 1
    with pytest.raises(InputError):
        epsilon(t, (1, 0))


def test_preset_mismatch():
    with pytest.raises(InputError):
        preset(A2, "su_even_quaternionic")
    with pytest.raises(InputError):
        preset(build_root_datum("C2"), "su_even_quaternionic")
    with pytest.raises(InputError):
        preset(A1, "no_such_preset")


@pytest.mark.parametrize("name", ["A1", "A2", "A3", "A4", "B3", "C3", "D4", "D5", "E6", "E7", "F4", "G2"])
def test_sigma_basics(name):
    d = build_root_datum(name)
    inv = preset(d, "trivial_involution")
    assert apply_sigma_plus(inv, d.rho) == d.rho
    for lam in level_weights(d, 2):
        assert apply_sigma_plus(inv, apply_sigma_plus(inv, lam)) == lam
        # fixed iff self-dual
        assert is_fixed(inv, lam) == (conjugate_weight(d, lam) == lam)


def test_classify_examples():
    t = classify(preset(A1, "trivial_involution"), level_weights(A1, 2))
    assert t.fixed_real == ((0,), (2,)) and t.fixed_quaternionic == ((1,),) and t.orbit_pairs == ()
    t = classify(preset(A2, "trivial_involution"), level_weights(A2, 1))
    assert t.fixed_real == ((0, 0),) and t.orbit_pairs == ((0, 1),)
    t = classify(preset(A3, "su_even_quaternionic"), level_weights(A3, 1))
    assert t.fixed_real == ((0, 0, 0), (0, 1, 0))
    assert t.fixed_quaternionic == ((0, 0, 1), (1, 0, 0))
    assert t.orbit_pairs == ()


@pytest.mark.parametrize("name,k", [("A3", 3), ("A4", 3), ("D5", 2), ("E6", 2), ("C2", 4)])
def test_partition_sizes(name, k):
    d = build_root_datum(name)
    lk = level_weights(d, k)
    t = classify(preset(d, "trivial_involution"), lk)
    assert len(t.fixed_real) + len(t.fixed_quaternionic) + 2 * len(t.orbit_pairs) == len(lk)


def test_frobenius_schur_oracle():
    inv = preset(A1, "trivial_involution")
    for a in range(5):
        assert round(su_frobenius_schur((a,))) == epsilon(inv, (a,))
    inv2 = preset(A2, "trivial_involution")
    assert round(su_frobenius_schur((1, 1))) == epsilon(inv2, (1, 1)) == 1
    assert round(su_frobenius_schur((2, 2))) == epsilon(inv2, (2, 2))
    inv3 = preset(A3, "trivial_involution")
    for lam in [(0, 1, 0), (1, 0, 1), (0, 2, 0), (1, 1, 1)]:
        assert round(su_frobenius_schur(lam, grid=16)) == epsilon(inv3, lam)


@pytest.mark.parametrize("name", ["A1", "A2", "A3", "A4"])
def test_presets_validate(name):
    d = build_root_datum(name)
    presets = ["trivial_involution"] + (["su_even_quaternionic"] if d.rank % 2 else [])
    for p in presets:
        rep = validate(preset(d, p), d, 4)
        assert rep.ok, rep.lines()


def test_sigma_equivariance_of_fusion():
    for d, p, k in [(A2, "trivial_involution", 3), (A3, "trivial_involution", 2),
                    (A3, "su_even_quaternionic", 2), (A4, "trivial_involution", 2)]:
        inv = preset(d, p)
        t = fusion_table(d, k)
        s = lambda w: apply_sigma_plus(inv, w)  # noqa: E731
        for lam in t.weights:
            for mu in t.weights:
                assert t.product(s(lam), s(mu)) == {s(nu): n for nu, n in t.product(lam, mu).items()}


def test_validation_failures():
    swap_missing = RealInvolutionDatum("bad", (1, 0), epsilon_table={(0,): -1})
    rep = validate(swap_missing, A2, 2)
    assert not rep.ok
    assert "epsilon_domain" in [c.name for c in rep.failed()]
    with pytest.raises(ValidationError):
        rep.raise_if_failed()
    with pytest.raises(ValidationError):
        classify(swap_missing, level_weights(A2, 2))

    cyclic = RealInvolutionDatum("cyc", (1, 2, 0), epsilon_coweight=(0, 0, 0))
    failed = [c.name for c in validate(cyclic, A3, 2).failed()]
    assert "sigma_involution" in failed

    wrong_diagram = RealInvolutionDatum("g2swap", (1, 0), epsilon_table={(0, 1): 1})
    failed = [c.name for c in validate(wrong_diagram, build_root_datum("G2"), 2).failed()]
    assert "cartan_preserved" in failed and "level_sets_preserved" in failed

    with pytest.raises(InputError):
        RealInvolutionDatum("x", (0,))


def test_epsilon_table_form():
    inv = RealInvolutionDatum("tab", (2, 1, 0), epsilon_table={(1,): -1, (0, 2): 1})
    assert validate(inv, A3, 3).ok
    assert epsilon(inv, (1, 1, 1)) == -1
    assert epsilon(inv, (2, 1, 2)) == -1
    assert epsilon(inv, (1, 2, 1)) == 1
    # all-(+1) table reproduces the trivial preset on A3
    plus = RealInvolutionDatum("plus", (2, 1, 0), epsilon_table={(1,): 1, (0, 2): 1})
    triv = preset(A3, "trivial_involution")
    for lam in level_weights(A3, 3):
        if is_fixed(plus, lam):
            assert epsilon(plus, lam) == epsilon(triv, lam)


def test_config_toml_and_json(tmp_path):
    toml = tmp_path / "inv.toml"
    toml.write_text('name = "mine"\npermutation = [3, 2, 1]\n\n[epsilon.table]\n"2" = -1\n"1+3" = 1\n')
    inv = load_involution_config(toml, A3)
    assert inv.name == "mine" and inv.sigma_plus == (2, 1, 0)
    js = tmp_path / "inv.json"
    js.write_text(json.dumps({"type": "A3", "permutation": [1, 2, 3], "epsilon": {"coweight": [1, 0, 1]}}))
    inv2 = load_involution_config(js)
    assert inv2.epsilon_coweight == (1, 0, 1)
    assert involution_from_config(inv.to_config(), A3) == inv


def test_config_diagnostics_have_line_numbers(tmp_path):
    bad = tmp_path / "bad.toml"
    bad.write_text('name = "x"\n# comment\npermutation = [2, 3, 1]\n[epsilon]\ncoweight = [0, 0, 0]\n')
    with pytest.raises(ValidationError, match=r"bad\.toml:3: sigma_involution"):
        load_involution_config(bad, A3)

    missing = tmp_path / "missing.toml"
    missing.write_text('permutation = [2, 1]\n\n[epsilon.table]\n"1" = -1\n')
    with pytest.raises(ValidationError, match=r"missing\.toml:3: epsilon_domain"):
        load_involution_config(missing, A2)

    broken = tmp_path / "broken.json"
    broken.write_text('{\n  "permutation": [1],\n  "epsilon": \n}\n')
    with pytest.raises(InputError, match=r"broken\.json:4"):
        load_involution_config(broken, A1)

    wrong_len = tmp_path / "len.toml"
    wrong_len.write_text('\n\npermutation = [1, 2]\n[epsilon]\ncoweight = [1]\n')
    with pytest.raises(ValidationError, match=r"len\.toml:3"):
        load_involution_config(wrong_len, A1)
