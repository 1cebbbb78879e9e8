"""Random scenarios: successive splits of large communities and merges of small ones."""

from dataclasses import dataclass

import numpy as np

from src.generator.density import round_half_up
from src.scenario.events import CommunityRef, EventDecl, initialize, merge, split
from src.utils.log_utils import setup_logger

log = setup_logger(__name__)


@dataclass(frozen=True)
class RandomScenarioParams:
    """
    Represents the parameters of a random scenario.

    Attributes:
        m (int): Initial number of communities.
        s_min (int): Smallest initial community size.
        s_max (int): Largest initial size; larger communities get split.
        o (int): Number of operations.
        seed (int): Seed of the draws.
    """

    m: int = 10
    s_min: int = 5
    s_max: int = 15
    o: int = 20
    seed: int = 0

    def __post_init__(self):
        if self.m < 2:
            raise ValueError(f"m must be at least 2, got {self.m}.")
        if not 2 <= self.s_min <= self.s_max:
            raise ValueError(f"Sizes must satisfy 2 <= s_min <= s_max, got {self.s_min}, {self.s_max}.")
        if self.o < 0:
            raise ValueError(f"o must be non-negative, got {self.o}.")

    @classmethod
    def from_config(cls, cfg: dict, seed: int = 0) -> "RandomScenarioParams":
        """Build from the `random_scenario` section of params.yaml."""
        return cls(
            m=int(cfg.get("m", cls.m)),
            s_min=int(cfg.get("s_min", cls.s_min)),
            s_max=int(cfg.get("s_max", cls.s_max)),
            o=int(cfg.get("o", cls.o)),
            seed=seed,
        )


@dataclass
class _Slot:
    ref: CommunityRef
    size: int
    label: str
    order: int


def random_scenario(params: RandomScenarioParams) -> list[EventDecl]:
    """
    Draw a random scenario.

    Starts from `m` communities of uniform random sizes in [s_min, s_max]. Each operation
    picks an active community uniformly: if it is larger than s_max it is split in two parts
    of 2/3 and 1/3 of its size, otherwise it is merged with the smallest other community
    (lowest creation order on ties). Each operation waits for the outputs of the previous one.

    Returns:
        list[EventDecl]: Declarations ready for the scenario engine.
    """
    rng = np.random.default_rng(params.seed)
    sizes = rng.integers(params.s_min, params.s_max + 1, size=params.m).tolist()
    labels = [f"c{i}" for i in range(params.m)]
    decls = [initialize(sizes, labels)]
    active = [_Slot(CommunityRef(0, i), s, l, i) for i, (s, l) in enumerate(zip(sizes, labels))]
    next_label = params.m
    counter = params.m
    previous: tuple[CommunityRef, ...] = tuple(slot.ref for slot in active)

    for _ in range(params.o):
        chosen = active[int(rng.integers(len(active)))]
        index = len(decls)
        if chosen.size > params.s_max:
            large = round_half_up(2 * chosen.size / 3)
            new_label = f"c{next_label}"
            next_label += 1
            triggers = tuple(dict.fromkeys((chosen.ref, *previous)))
            parts = [large, chosen.size - large]
            decls.append(split(chosen.ref, [chosen.label, new_label], parts, triggers=triggers))
            active.remove(chosen)
            active.append(_Slot(CommunityRef(index, 0), large, chosen.label, counter))
            active.append(_Slot(CommunityRef(index, 1), chosen.size - large, new_label, counter + 1))
            counter += 2
            previous = (CommunityRef(index, 0), CommunityRef(index, 1))
            continue

        others = [slot for slot in active if slot is not chosen]
        if not others:
            log.warning(
                "Community %s has nothing to merge with and is too small to split; operation skipped.",
                chosen.label,
            )
            continue
        partner = min(others, key=lambda slot: (slot.size, slot.order))
        keeper = max((chosen, partner), key=lambda slot: (slot.size, -slot.order))
        triggers = tuple(dict.fromkeys((chosen.ref, partner.ref, *previous)))
        decls.append(merge([chosen.ref, partner.ref], keeper.label, triggers=triggers))
        active.remove(chosen)
        active.remove(partner)
        active.append(_Slot(CommunityRef(index, 0), chosen.size + partner.size, keeper.label, counter))
        counter += 1
        previous = (CommunityRef(index, 0),)

    log.info("Random scenario with %s declarations (%s operations).", len(decls), params.o)
    return decls
