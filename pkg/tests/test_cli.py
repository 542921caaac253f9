import pytest

import util
from roundideal import io as rio
from roundideal.cli import main
from roundideal.lattice import boolean, chain


@pytest.fixture
def square(tmp_path):
    path = tmp_path / "square.lat"
    path.write_text(rio.serialize_lattice(boolean(2)))
    return path


@pytest.fixture
def three_chain(tmp_path):
    path = tmp_path / "chain.lat"
    path.write_text(rio.serialize_lattice(chain(3)))
    return path


@pytest.fixture
def pentagon(tmp_path):
    path = tmp_path / "n5.lat"
    path.write_text(
        "lattice N5 lattice\nelements 0 a b c 1\n"
        "le 0 a\nle 0 b\nle b c\nle a 1\nle c 1\n"
    )
    return path


def collapse_map_doc(tmp_path, square):
    tgt = tmp_path / "tgt.lat"
    tgt.write_text(rio.serialize_lattice(boolean(1)))
    f = util.atom_map(boolean(2), boolean(1), [0, 0])
    doc = rio.serialize_map(f, source_path=square.name, target_path=tgt.name)
    path = tmp_path / "collapse.map"
    path.write_text(doc)
    return path


class TestValidate:
    def test_valid_lattice(self, square, capsys):
        assert main(["validate", str(square)]) == 0
        assert "valid" in capsys.readouterr().out

    def test_invalid_lattice_exit_one(self, pentagon, capsys):
        assert main(["validate", str(pentagon)]) == 1
        assert "distributivity" in capsys.readouterr().out

    def test_missing_file_exit_two(self, tmp_path):
        assert main(["validate", str(tmp_path / "nope.lat")]) == 2

    def test_check_all(self, square, capsys):
        assert main(["validate", str(square), "--check-all"]) == 0
        out = capsys.readouterr().out
        assert "ok core sandwich-stable" in out
        assert "FAIL" not in out

    def test_check_all_on_chain(self, three_chain, capsys):
        assert main(["validate", str(three_chain), "--check-all"]) == 0


class TestDerive:
    def test_wellinside_emits_relation_doc(self, square, capsys):
        assert main(["derive", str(square), "wellinside"]) == 0
        out = capsys.readouterr().out
        assert out.startswith("relation wellinside")
        assert "pair" in out

    def test_pseudo(self, three_chain, capsys):
        assert main(["derive", str(three_chain), "pseudo"]) == 0
        out = capsys.readouterr().out
        assert "star c1 c0" in out

    def test_core(self, square, capsys):
        assert main(["derive", str(square), "core"]) == 0
        assert "pair" in capsys.readouterr().out


class TestSi:
    def test_default_seed(self, square, capsys):
        assert main(["si", str(square)]) == 0
        out = capsys.readouterr().out
        assert "conditions passing: 7/7" in out

    def test_seed_from_derive_output(self, square, tmp_path, capsys):
        main(["derive", str(square), "core"])
        rel_doc = capsys.readouterr().out
        seed_path = tmp_path / "core.rel"
        seed_path.write_text(rel_doc)
        assert main(["si", str(square), "--seed-rel", str(seed_path)]) == 0
        assert "7/7" in capsys.readouterr().out

    def test_bad_seed_exit_two(self, three_chain, tmp_path, capsys):
        seed_path = tmp_path / "bad.rel"
        seed_path.write_text("pair c1 c1\n")
        assert main(["si", str(three_chain), "--seed-rel", str(seed_path)]) == 2
        assert "not well-inside" in capsys.readouterr().err


class TestCompactify:
    def test_boolean(self, square, capsys):
        assert main(["compactify", str(square)]) == 0
        out = capsys.readouterr().out
        assert "round ideals: 4" in out
        assert "compact regular: yes" in out

    def test_with_map(self, square, tmp_path, capsys):
        map_path = collapse_map_doc(tmp_path, square)
        assert main(["compactify", str(square), "--maps", str(map_path)]) == 0
        assert "extension 0" in capsys.readouterr().out

    def test_chain_not_strongly_regular(self, three_chain, capsys):
        assert main(["compactify", str(three_chain)]) == 2
        assert "strongly regular" in capsys.readouterr().err

    def test_dot_output(self, square, tmp_path, capsys):
        out_path = tmp_path / "frame.dot"
        assert main(["compactify", str(square), "--dot", str(out_path)]) == 0
        assert "digraph" in out_path.read_text()

    def test_explicit_basis(self, square, capsys):
        assert main(
            ["compactify", str(square), "--basis", "{}", "{a}", "{b}", "{a,b}"]
        ) == 0

    def test_non_generating_basis_exit_two(self, square, capsys):
        assert main(["compactify", str(square), "--basis", "{}", "{a,b}"]) == 2
        assert "basis" in capsys.readouterr().err


class TestExtend:
    def test_extend_through_canonical(self, square, tmp_path, capsys):
        map_path = collapse_map_doc(tmp_path, square)
        assert main(["extend", str(square), str(map_path)]) == 0
        out = capsys.readouterr().out
        assert "to" in out

    def test_extend_through_family(self, square, tmp_path, capsys):
        map_path = collapse_map_doc(tmp_path, square)
        spec = f"canonical:{map_path.name}"
        assert main(["extend", str(square), str(map_path), "--through", spec]) == 0

    def test_non_regular_codomain_exit_two(self, square, tmp_path, capsys):
        tgt = tmp_path / "c3.lat"
        tgt.write_text(rio.serialize_lattice(chain(3)))
        doc = (
            f"map f\nsource {tmp_path / 'square.lat'}\ntarget {tgt.name}\n"
            "to c0 {}\nto c1 {a}\nto c2 {a,b}\n"
        )
        map_path = tmp_path / "f.map"
        map_path.write_text(doc)
        assert main(["extend", str(square), str(map_path)]) == 2


class TestCompare:
    def test_same_spec_iso(self, square, capsys):
        assert main(["compare", str(square), str(square)]) == 0
        assert "verdict: iso" in capsys.readouterr().out

    def test_family_vs_empty(self, square, tmp_path, capsys):
        map_path = collapse_map_doc(tmp_path, square)
        spec2 = f"{square}:{map_path.name}"
        assert main(["compare", str(square), spec2]) == 0
        out = capsys.readouterr().out
        assert "verdict:" in out

    def test_different_lattices_exit_two(self, square, three_chain):
        assert main(["compare", str(square), str(three_chain)]) == 2


class TestGenAndDot:
    def test_gen_deterministic(self, capsys):
        assert main(["gen", "--seed", "7", "--size", "4"]) == 0
        first = capsys.readouterr().out
        assert main(["gen", "--seed", "7", "--size", "4"]) == 0
        assert capsys.readouterr().out == first

    def test_gen_size_cap(self, capsys):
        assert main(["gen", "--seed", "1", "--size", "12"]) == 2

    def test_gen_feeds_validate(self, tmp_path, capsys):
        main(["gen", "--seed", "3", "--size", "4"])
        doc = capsys.readouterr().out
        path = tmp_path / "g.lat"
        path.write_text(doc)
        assert main(["validate", str(path)]) == 0

    def test_dot(self, square, capsys):
        assert main(["dot", str(square)]) == 0
        assert "digraph" in capsys.readouterr().out
