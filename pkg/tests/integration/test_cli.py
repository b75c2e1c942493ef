# tests/integration/test_cli.py

import json

import pytest

from semiarith.cli import main, split_global_options
from semiarith.core.errors import DocumentError
from semiarith.io.writer import write_document

pytestmark = pytest.mark.timeout(600)


def run(capsys, *argv):
    code = main(["--quiet", *argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_split_global_options():
    """
    Shared flags are removed wherever they appear.
    """
    options, rest = split_global_options(["arithmetic", "--json", "modular", "--config=a.yaml"])
    assert options.json
    assert options.config == "a.yaml"
    assert rest == ["arithmetic", "modular"]
    with pytest.raises(DocumentError):
        split_global_options(["--config"])


def test_groups(capsys):
    """
    The built-in corpus is listed one name per line.
    """
    code, out, _ = run(capsys, "groups")
    assert code == 0
    assert out.splitlines()[0] == "modular"
    assert "takeuchi-B2" in out


def test_trace_field(capsys):
    """
    PSL(2, Z) has trace field Q.
    """
    code, out, _ = run(capsys, "trace-field", "modular")
    assert code == 0
    assert out.splitlines()[0] == "Q"
    assert "trace-field condition: true" in out


def test_arithmetic_exit_codes(capsys):
    """
    Arithmetic groups exit 0, the Hecke group exits 1.
    """
    code, out, _ = run(capsys, "arithmetic", "modular")
    assert code == 0
    assert "arithmetic: true" in out
    code, out, _ = run(capsys, "arithmetic", "hecke-5")
    assert code == 1
    assert "arithmetic: false" in out


def test_json_output(capsys):
    """
    --json prints one parseable document.
    """
    code, out, _ = run(capsys, "--json", "arithmetic", "modular")
    assert code == 0
    data = json.loads(out)
    assert data["arithmetic"] is True
    assert data["ramified_at"] == [False]


def test_reduce_bad_prime(capsys):
    """
    p ∈ S(Γ) is a precondition failure.
    """
    code, _, err = run(capsys, "reduce", "modular", "2")
    assert code == 2
    assert "2 ∈ S(Γ)" in err


def test_reduce(capsys):
    """
    PSL(2, Z) mod 7 is onto PSL(2, 7).
    """
    code, out, _ = run(capsys, "reduce", "modular", "7")
    assert code == 0
    assert "(7): PSL(2,7)" in out
    assert "surjective, order 168" in out


def test_unknown_group(capsys):
    """
    Neither a built-in nor a file.
    """
    code, _, err = run(capsys, "info", "no-such-group")
    assert code == 2
    assert "neither a built-in group" in err


def test_info_from_document(tmp_path, capsys, hecke5):
    """
    Documents on disk are accepted wherever a group is expected.
    """
    path = write_document(hecke5, tmp_path / "hecke.json")
    code, out, _ = run(capsys, "info", str(path))
    assert code == 0
    assert "relators: S^2" in out


def test_local(capsys):
    """
    Ramified tops are cyclic of order q + 1; unramified steps are (Z/p)³.
    """
    code, out, _ = run(capsys, "local", "ram", "3")
    assert code == 0
    assert out.splitlines()[0] == "cyclic, order 4"
    code, out, _ = run(capsys, "local", "unram", "5", "--r=2", "--composition")
    assert code == 0
    assert "order 15000; steps: (Z/5)^3" in out
    assert "composition factors: [2, 60, 5, 5, 5]" in out
    code, out, _ = run(capsys, "local", "ram", "3", "--r=3")
    assert code == 0
    lines = out.splitlines()
    assert lines[1].startswith("  step 1: measured order 9, stated order 3, exponent 3 (")
    assert "trace-zero part" in lines[1]
    assert lines[2] == "  step 2: measured order 3, stated order 3, exponent 3"
    code, _, _ = run(capsys, "local", "split", "5")
    assert code == 2


def test_crt(capsys):
    """
    SL(2, Z/15) decomposes; the PSL kernel is Z/2.
    """
    code, out, _ = run(capsys, "crt")
    assert code == 0
    assert out.strip() == "SL: bijective (2880); PSL kernel: (Z/2)^1"


def test_mod_embed_check(capsys):
    """
    tr x = 2√2 obstructs a modular embedding.
    """
    code, out, _ = run(capsys, "mod-embed-check", "conj-sqrt2-demo")
    assert code == 1
    assert "embedding 1" in out


@pytest.mark.slow
def test_rigidity_genus_one_groups(capsys):
    """
    The genus-one groups are told apart by χ(tr² α²) at p = 5.
    """
    code, out, _ = run(capsys, "rigidity", "takeuchi-A", "takeuchi-B", "--maxlen=2")
    assert code == 0
    assert "alpha^2 | x - 9 | x - 36" in out
    assert "witness alpha^2 at p = 5" in out
