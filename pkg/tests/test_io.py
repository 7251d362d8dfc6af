import json

import pytest
from hypothesis import given

from oaiso.design import CountingVector, Design, counting_vector
from oaiso.io import DesignFormatError, format_design, parse_design, read_design, read_designs, write_design
from strategies import counting_vectors


class TestParse:
    def test_with_header(self):
        f = parse_design("3 2\n0 0\n0 1\n1 1\n")
        assert f == Design(2, ((0, 0), (0, 1), (1, 1)))

    def test_headerless(self):
        assert parse_design("0 1 1\n1 0 1\n").runs == ((0, 1, 1), (1, 0, 1))

    def test_comments_and_blanks(self):
        f = parse_design("# a design\n\n2 2\n  # indented comment\n0 0\n\n1 1\n")
        assert f.N == 2 and f.d == 2

    def test_binary_looking_header_is_data_when_inconsistent(self):
        # "1 1" could declare N=1, d=1, but three two-token rows follow
        assert parse_design("1 1\n0 0\n1 0\n").N == 3

    def test_binary_looking_header_when_consistent(self):
        assert parse_design("1 1\n0\n").runs == ((0,),)

    def test_header_count_mismatch(self):
        with pytest.raises(DesignFormatError, match="N=4") as err:
            parse_design("4 2\n0 0\n1 1\n")
        assert err.value.lineno == 1

    def test_ragged_row(self):
        with pytest.raises(DesignFormatError) as err:
            parse_design("0 0\n1\n", source="x.txt")
        assert err.value.lineno == 2 and "x.txt:2:" in str(err.value)

    def test_bad_level(self):
        with pytest.raises(DesignFormatError, match="'2'") as err:
            parse_design("# c\n0 1\n2 0\n")
        assert err.value.lineno == 3

    def test_empty(self):
        with pytest.raises(DesignFormatError):
            parse_design("# nothing\n\n")
        with pytest.raises(DesignFormatError):
            parse_design("5 2\n")

    def test_error_is_value_error(self):
        with pytest.raises(ValueError):
            parse_design("a b\n")


class TestFiles:
    def test_round_trip(self, tmp_path, example_f):
        p = tmp_path / "f.txt"
        write_design(p, example_f, comment="example")
        assert p.read_text().startswith("# example\n6 2\n")
        assert counting_vector(read_design(p)) == counting_vector(example_f)

    @given(counting_vectors(max_d=5))
    def test_format_parse_preserves_counts(self, v):
        assert counting_vector(parse_design(format_design(v))) == v

    def test_json_input(self, tmp_path):
        p = tmp_path / "v.json"
        p.write_text(json.dumps({"d": 2, "counts": [2, 1, 1, 2]}))
        assert counting_vector(read_design(p)) == CountingVector(2, (2, 1, 1, 2))

    def test_bad_json(self, tmp_path):
        p = tmp_path / "v.json"
        p.write_text(json.dumps({"d": 2, "counts": [1, 1]}))
        with pytest.raises(DesignFormatError):
            read_design(p)

    def test_directory(self, tmp_path):
        write_design(tmp_path / "b.txt", CountingVector(2, (1, 1, 1, 1)))
        write_design(tmp_path / "a.txt", CountingVector(2, (2, 1, 1, 2)))
        (tmp_path / "notes.md").write_text("ignored")
        names = [name for name, _ in read_designs([tmp_path])]
        assert names == ["a", "b"]

    def test_shipped_classes_load(self):
        from conftest import DATA

        for sub, n in (("oa_N20_d3_t2", 3), ("oa_N20_d4_t2", 3), ("oa_N20_d5_t2", 11)):
            designs = read_designs([DATA / sub])
            assert len(designs) == n
            assert all(f.N == 20 for _, f in designs)
