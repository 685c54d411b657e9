import pytest

from emitternet import EmitterLines

ZFS_GHZ = 1.027


def make_emitter(i: int, center_ghz: float, zfs_ghz: float = ZFS_GHZ,
                 fwhm_a1_mhz: float = 316.0, fwhm_a2_mhz: float = 310.0) -> EmitterLines:
    return EmitterLines(
        id=f"m{i:03d}",
        a1_ghz=center_ghz - zfs_ghz / 2.0,
        a2_ghz=center_ghz + zfs_ghz / 2.0,
        fwhm_a1_mhz=fwhm_a1_mhz,
        fwhm_a2_mhz=fwhm_a2_mhz,
    )


@pytest.fixture(scope="session")
def fixture_50_12() -> list[EmitterLines]:
    """50 emitters with exactly 12 pairs separated by less than 29 MHz.

    Base centers sit 5 GHz apart (no accidental overlaps, same ZFS for
    all); the first 12 even/odd couples are then pulled to 5..16 MHz
    apart, so those couples are the only qualifying pairs for any window
    between 17 MHz and ~1 GHz.
    """
    centers = [5.0 * i for i in range(50)]
    for j in range(12):
        centers[2 * j + 1] = centers[2 * j] + (5 + j) * 1e-3
    return [make_emitter(i, c) for i, c in enumerate(centers)]
