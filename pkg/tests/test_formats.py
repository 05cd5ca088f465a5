# tests/test_formats.py
import json
from fractions import Fraction

import pytest

from core.chains import Chain, character_bimodule
from core.errors import FormatError, NonAssociative
from core.formats import (
    algebra_element_from_dict,
    algebra_element_to_dict,
    chain_from_dict,
    chain_to_dict,
    dump_morphism,
    dump_table,
    load_bimodule,
    load_chain,
    load_morphism,
    load_table,
    table_to_dict,
)
from core.semilattice import collapse_morphism
from core.sparse import format_fraction, format_key, parse_fraction, parse_key


def _write(path, data):
    path.write_text(json.dumps(data), encoding="utf-8")
    return path


def test_table_file_is_byte_stable(tmp_path, free2):
    first = dump_table(free2, tmp_path / "a.json").read_bytes()
    second = dump_table(free2, tmp_path / "b.json").read_bytes()
    assert first == second
    assert first.endswith(b"\n")
    assert load_table(tmp_path / "a.json") == free2


def test_table_file_errors(tmp_path):
    with pytest.raises(FormatError):
        load_table(tmp_path / "missing.json")
    (tmp_path / "bad.json").write_text("{not json", encoding="utf-8")
    with pytest.raises(FormatError):
        load_table(tmp_path / "bad.json")
    extra = _write(tmp_path / "extra.json", {"elements": ["e"], "table": [[0]], "unit": 0, "name": "x"})
    with pytest.raises(FormatError):
        load_table(extra)
    broken = _write(tmp_path / "broken.json", {"elements": ["a", "b"], "table": [[1, 1], [0, 0]]})
    with pytest.raises(NonAssociative):
        load_table(broken)


def test_morphism_paths_are_relative_to_the_file(tmp_path, free2, chain2):
    dump_table(free2, tmp_path / "free2.json")
    dump_table(chain2, tmp_path / "two.json")
    _write(tmp_path / "collapse.json", {"source": "free2.json", "target": "two.json", "map": [0, 1, 1, 1]})
    theta = load_morphism(tmp_path / "collapse.json")
    assert theta.map == (0, 1, 1, 1)
    assert theta.target == chain2


def test_inline_morphism_file(tmp_path):
    theta = collapse_morphism(2)
    loaded = load_morphism(dump_morphism(theta, tmp_path / "m.json"))
    assert loaded.map == theta.map
    assert loaded.source == theta.source


def test_algebra_element_dicts(chain2):
    data = {"base": table_to_dict(chain2), "coeffs": {"0": "1/2", "1": -3}}
    a = algebra_element_from_dict(data)
    assert a.coeffs == {0: Fraction(1, 2), 1: -3}
    assert algebra_element_to_dict(a)["coeffs"] == {"0": "1/2", "1": "-3/1"}
    with pytest.raises(FormatError):
        algebra_element_from_dict({"base": table_to_dict(chain2), "coeffs": {"7": 1}})


def test_bimodule_file(tmp_path, chain2):
    data = {"dim": 1, "left": {"0": [[1]], "1": [[1]]}, "right": {"0": [[1]], "1": [[1]]}, "symmetric": True}
    module = load_bimodule(_write(tmp_path / "ones.json", data), chain2)
    assert module.name == "ones"
    assert module.left == character_bimodule(chain2, [1, 1]).left
    data["symmetric"] = False
    with pytest.raises(FormatError):
        load_bimodule(_write(tmp_path / "liar.json", data), chain2)
    del data["left"]["1"]
    with pytest.raises(FormatError):
        load_bimodule(_write(tmp_path / "short.json", data), chain2)


def test_chain_file(tmp_path, chain2):
    c = Chain(chain2, 1, {(0, 1): Fraction(-2, 3), (1, 1): 1})
    data = chain_to_dict(c)
    assert data["coeffs"] == {"(0,1)": "-2/3", "(1,1)": "1/1"}
    assert chain_from_dict(data) == c
    path = _write(tmp_path / "c.json", chain_to_dict(c, base_ref="two.json"))
    dump_table(chain2, tmp_path / "two.json")
    assert load_chain(path) == c


def test_scalar_and_key_codecs():
    assert format_fraction(Fraction(-4, 6)) == "-2/3"
    assert parse_fraction("3/6") == Fraction(1, 2)
    assert parse_fraction(4) == 4
    assert format_key((0, 12, 3)) == "(0,12,3)"
    assert parse_key(" (1, 2) ") == (1, 2)
    for bad in ("1/0", 1.5, "x"):
        with pytest.raises(FormatError):
            parse_fraction(bad)
    with pytest.raises(FormatError):
        parse_key("1,2")
