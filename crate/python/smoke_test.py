"""Smoke test for the rockpy extension module.

Build it first with `pip install --no-build-isolation -e crates/rockpy`.
"""

import rockpy
from rockpy import Partition


def main():
    lam = Partition("6,4,2,2,1,1")
    assert lam.parts == [6, 4, 2, 2, 1, 1]
    assert lam.size() == 16
    assert Partition([3, 1]).conjugate() == Partition("2,1,1")
    assert Partition("3").dominates("2,1")

    assert str(rockpy.rouquier_core(3, 3)) == "6,4,2,2,1,1"
    assert rockpy.is_rouquier("6,4,2,2,1,1", 3, 3)
    assert str(rockpy.p_core("4,1", 3)) == "1,1"
    assert rockpy.p_weight("4,1", 3) == 1
    q = rockpy.p_quotient("3,2,1,1", 2, 4)
    assert rockpy.reconstruct(rockpy.p_core("3,2,1,1", 2), q, 2, 4) == Partition("3,2,1,1")
    assert rockpy.abacus(lam, 3, 15).splitlines()[0] == "0 1 2"
    assert rockpy.lr_coeff("2,1", "1", "1,1") == 1
    assert rockpy.lr_coeff("-", "-", "-") == 1

    m = rockpy.schur_decmatrix(2, 2, 2)
    assert m.rows == ["2", "1,1"] and m.entries == [[1, 1], [0, 1]]
    assert rockpy.schur_decmatrix(3, 3, 5).is_identity()
    assert rockpy.adjustment_matrix(5, 2).is_identity()
    full = rockpy.full_decmatrix(2, 2)
    assert len(full.rows) == 5 and len(full.cols) == 2

    assert rockpy.verify_double("s1", 2, characteristic=2)["passed"]
    assert rockpy.triangular_quiver(3)["dim"] == 12
    assert all(c["passed"] for c in rockpy.check_theta(1, 2))
    assert rockpy.wreath_localization(2, 2)["corner_dim"] == 8
    assert rockpy.walk_complex(1, 2, 3)["passed"]
    assert rockpy.power_sum_complex(2, 2)["complex"]["homology"] == [1, 3]

    try:
        Partition("4,x")
    except ValueError:
        pass
    else:
        raise AssertionError("malformed partition accepted")
    print("rockpy smoke test passed")


if __name__ == "__main__":
    main()
