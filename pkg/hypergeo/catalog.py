"""Named Ramanujan-type series with their claimed values."""

from __future__ import annotations

from gmpy2 import mpq

from .errors import ParameterError
from .hyper_eval import ClaimedValue, Kernel, RamanujanFormula

CATALOG: dict[str, RamanujanFormula] = {
    f.name: f
    for f in (
        RamanujanFormula(
            name="eq1",
            kernel=Kernel.POCHHAMMER_HALF_5,
            quadratic=(20, 8, 1),
            x=mpq(-1, 4),
            claimed=ClaimedValue(S=8),
            source="sum (1/2)_n^5/n!^5 (20n^2+8n+1)(-1/4)^n = 8/pi^2",
        ),
        RamanujanFormula(
            name="eq2",
            kernel=Kernel.POCHHAMMER_HALF_5,
            quadratic=(820, 180, 13),
            x=mpq(-1, 1024),
            claimed=ClaimedValue(S=128),
            source="sum (1/2)_n^5/n!^5 (820n^2+180n+13)(-1/2^10)^n = 128/pi^2",
        ),
        RamanujanFormula(
            name="eq3",
            kernel=Kernel.APERY_LIKE_A,
            quadratic=(36, 12, 1),
            x=mpq(1, 1024),
            claimed=ClaimedValue(S=32),
            source="sum A_n (36n^2+12n+1)/2^(10n) = 32/pi^2; not proven, checked numerically",
            conjectural=True,
        ),
        RamanujanFormula(
            name="yang",
            kernel=Kernel.YANG_B,
            quadratic=(0, 4, 1),
            x=mpq(1, 36),
            claimed=ClaimedValue(S=18, pi_power=1, extra_sqrt_denom=15),
            source="sum B_n (4n+1)/36^n = 18/(pi sqrt(15))",
        ),
        RamanujanFormula(
            name="thm3-1",
            kernel=Kernel.FR_TIMES_U,
            quadratic=(18, -10, -3),
            x=mpq(1, 6400),
            claimed=ClaimedValue(S=10, d=5),
            source="sum U_n (4n)!/(n!^2(2n)!) (18n^2-10n-3)/6400^n = 10 sqrt(5)/pi^2",
        ),
        RamanujanFormula(
            name="thm3-2",
            kernel=Kernel.FR_TIMES_U,
            quadratic=(1046529, 227104, 16032),
            x=mpq(1, 1050625),
            claimed=ClaimedValue(S=25625, d=41),
            source="sum U_n (4n)!/(n!^2(2n)!) (1046529n^2+227104n+16032)/1050625^n = 25625 sqrt(41)/pi^2",
        ),
    )
}

FORMULA_IDS = tuple(CATALOG)


def get_formula(formula_id: str) -> RamanujanFormula:
    try:
        return CATALOG[formula_id]
    except KeyError:
        raise ParameterError(
            f"unknown formula {formula_id!r}; expected one of: {', '.join(FORMULA_IDS)}"
        ) from None
