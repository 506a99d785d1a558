__all__ = [
    "HexcatOptions",
    "DEFAULT_OPTIONS",
]


from typing import List

from pydantic import BaseModel, validator


class HexcatOptions(BaseModel):
    """Enumeration knobs shared by every instance and computed category."""

    bound: int = 4096
    fragment: List[int] = [0, 1, 2, 3]
    carriers: List[int] = [0, 1, 2]
    strict_fillers: bool = True

    @validator("bound")
    def bound_is_positive(cls, value: int) -> int:
        if value <= 0:
            raise ValueError("bound must be positive")
        return value

    @validator("fragment", "carriers", each_item=True)
    def sizes_are_natural(cls, value: int) -> int:
        if value < 0:
            raise ValueError("object sizes must be non-negative")
        return value


DEFAULT_OPTIONS = HexcatOptions()
