"""Parameters of the edge generator."""

from dataclasses import dataclass


@dataclass(frozen=True)
class GeneratorParams:
    """
    Represents the parameters of the Deterministic Strongly Assortative Block Model.

    Attributes:
        alpha (float): Density exponent in (0, 1]. Mean internal degree is (n_c - 1)^alpha,
            so communities are cliques at 1.
        beta (float): Identifiability in [0, 1]. External density is beta times the
            internal density of the whole graph seen as one community.
        beta_r (float): Fraction of edges rewired at random at each step, in [0, 1].
        seed (int): Seed of the latent affinities and of the noise.
    """

    alpha: float = 0.9
    beta: float = 0.05
    beta_r: float = 0.01
    seed: int = 0

    def __post_init__(self):
        if not 0 < self.alpha <= 1:
            raise ValueError(f"alpha must be in (0, 1], got {self.alpha}.")
        if not 0 <= self.beta <= 1:
            raise ValueError(f"beta must be in [0, 1], got {self.beta}.")
        if not 0 <= self.beta_r <= 1:
            raise ValueError(f"beta_r must be in [0, 1], got {self.beta_r}.")
        if self.seed < 0:
            raise ValueError(f"seed must be non-negative, got {self.seed}.")

    @classmethod
    def from_mu(cls, mu: float, beta_r: float = 0.01, seed: int = 0) -> "GeneratorParams":
        """Single-knob sharpness: alpha = 1 - mu and beta = mu."""
        if not 0 <= mu < 1:
            raise ValueError(f"mu must be in [0, 1), got {mu}.")
        return cls(alpha=1 - mu, beta=mu, beta_r=beta_r, seed=seed)

    @classmethod
    def from_config(cls, cfg: dict) -> "GeneratorParams":
        """Build from the `generator` section of params.yaml."""
        return cls(
            alpha=float(cfg.get("alpha", cls.alpha)),
            beta=float(cfg.get("beta", cls.beta)),
            beta_r=float(cfg.get("beta_r", cls.beta_r)),
            seed=int(cfg.get("seed", cls.seed)),
        )
