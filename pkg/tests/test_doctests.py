import doctest

import pytest

from fernlab import exactlinalg, steinberg


@pytest.mark.parametrize("module", [exactlinalg, steinberg])
def test_module_doctests(module):
    result = doctest.testmod(module)
    assert result.failed == 0 and result.attempted > 0
