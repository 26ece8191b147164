import typing

import numpy as np
import pydantic
from pydantic import ConfigDict


def readonly_array(value: typing.Any, dtype=float) -> np.ndarray:
    """
    Copy `value` into a contiguous array that can no longer be written to.
    :param value:
    :param dtype:
    :return:
    """
    array = np.array(value, dtype=dtype, copy=True)
    array.setflags(write=False)
    return array


def _short(value: typing.Any) -> str:
    if isinstance(value, np.ndarray):
        return f"array(shape={value.shape})"
    return repr(value)


class BaseModel(pydantic.BaseModel):
    model_config = ConfigDict(
        frozen=True, arbitrary_types_allowed=True, use_enum_values=True
    )

    def __str__(self):
        return "{" + ", ".join(
            f"{key}: {_short(value)}" for key, value in self._set_items()
        ) + "}"

    def __repr__(self):
        args = ", ".join(
            [f"{key}={_short(value)}" for key, value in self._set_items()]
        )
        return "{}({})".format(self.__class__.__name__, args)

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        for name in type(self).model_fields:
            mine, theirs = getattr(self, name), getattr(other, name)
            if isinstance(mine, np.ndarray) or isinstance(theirs, np.ndarray):
                if not np.array_equal(mine, theirs):
                    return False
            elif mine != theirs:
                return False
        return True

    def _set_items(self):
        for name in type(self).model_fields:
            value = getattr(self, name)
            if value is not None:
                yield name, value
