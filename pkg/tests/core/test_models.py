# tests/core/test_models.py

import pytest
from pydantic import ValidationError

from semiarith.core.errors import (
    BadPrimeError,
    DocumentError,
    EnumerationCapExceeded,
    FieldError,
    InternalConsistencyError,
    PreconditionError,
    SemiarithError,
)
from semiarith.core.operations.models import (
    EnumerationConfig,
    RuntimeConfig,
    SearchConfig,
    SemiarithConfig,
)


def test_default_config_values():
    """
    Defaults carry the documented caps and search lengths.
    """
    config = SemiarithConfig()
    assert config.enumeration.psl_closure_cap == 1_000_000
    assert config.enumeration.local_unramified_cap == 10_000_000
    assert config.search.trace_word_length == 3
    assert config.search.symbol_word_length == 4
    assert config.search.max_square_generators == 8
    assert config.sampling.stabilization_words == 200


def test_enumeration_config_invalid():
    """
    Ensure non-positive caps raise ValidationError.
    """
    with pytest.raises(ValidationError):
        EnumerationConfig(psl_closure_cap=0)


@pytest.mark.parametrize("length", [0, 13])
def test_search_config_invalid_length(length):
    """
    Word lengths outside 1..12 are rejected.
    """
    with pytest.raises(ValidationError):
        SearchConfig(trace_word_length=length)


def test_runtime_config_normalizes_level():
    """
    Log levels are upper-cased; unknown ones are rejected.
    """
    assert RuntimeConfig(log_level="debug").log_level == "DEBUG"
    with pytest.raises(ValidationError):
        RuntimeConfig(log_level="chatty")


def test_symbol_search_not_shorter_than_trace_search():
    """
    The model validator ties the two search lengths together.
    """
    with pytest.raises(ValidationError):
        SemiarithConfig.model_validate(
            {"search": {"trace_word_length": 5, "symbol_word_length": 4}}
        )


def test_from_yaml_partial(tmp_path):
    """
    A YAML file overriding one key keeps every other default.
    """
    path = tmp_path / "config.yaml"
    path.write_text("semiarith:\n  enumeration:\n    psl_closure_cap: 5000\n", encoding="utf-8")
    config = SemiarithConfig.from_yaml(path)
    assert config.enumeration.psl_closure_cap == 5000
    assert config.search.trace_word_length == 3


def test_from_yaml_missing_file(tmp_path):
    """
    An explicitly named config file must exist.
    """
    with pytest.raises(FileNotFoundError):
        SemiarithConfig.from_yaml(tmp_path / "absent.yaml")


def test_error_exit_codes():
    """
    Scope errors exit with 2, consistency failures with 3.
    """
    assert issubclass(FieldError, PreconditionError)
    assert issubclass(PreconditionError, SemiarithError)
    assert BadPrimeError("p = 2", prime=2).exit_code == 2
    assert InternalConsistencyError("broken").exit_code == 3


def test_error_attributes():
    """
    Structured errors keep their extra fields.
    """
    error = DocumentError("unexpected token", line=3, column=7)
    assert (error.line, error.column) == (3, 7)
    assert "line 3, column 7" in str(error)
    cap = EnumerationCapExceeded("too big", size=10, cap=5)
    assert (cap.size, cap.cap) == (10, 5)
