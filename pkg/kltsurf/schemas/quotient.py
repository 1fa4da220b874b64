from math import gcd

from pydantic import BaseModel, ConfigDict, Field, model_validator


class CyclicQuotient(BaseModel):
    """The cyclic quotient singularity (1/n)(1, a)."""

    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=2, description="Order of the group", examples=[5])
    a: int = Field(..., ge=1, description="Weight, 1 <= a < n, coprime to n", examples=[2])

    @model_validator(mode="after")
    def coprime_in_range(self) -> "CyclicQuotient":
        if self.a >= self.n:
            raise ValueError(f"a must satisfy 1 <= a < n (got a={self.a}, n={self.n})")
        if gcd(self.a, self.n) != 1:
            raise ValueError(f"gcd(a, n) must be 1 (got gcd({self.a}, {self.n}) = {gcd(self.a, self.n)})")
        return self
