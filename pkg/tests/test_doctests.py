"""Every documented usage example in the package must actually run."""

from __future__ import annotations

import doctest

import pytest

from torext import corpus, duality, extcalc, extensions, fgabelian, intmat, jsonio, oracle

MODULES = [intmat, fgabelian, extensions, extcalc, oracle, duality, jsonio, corpus]


@pytest.mark.parametrize("module", MODULES, ids=lambda m: m.__name__)
def test_module_docstring_examples(module):
    result = doctest.testmod(module, verbose=False)
    assert result.failed == 0
    if module is not jsonio:
        assert result.attempted > 0
