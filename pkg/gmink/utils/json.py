import abc
import typing


class AbstractJsonLibrary(abc.ABC):
    def loads(self, *args, **kwargs) -> dict:
        ...

    def dumps(self, *args, **kwargs) -> typing.Union[str, bytes]:
        ...


class JsonLibrary(AbstractJsonLibrary):  # noqa
    """
    Thin facade over orjson or the stdlib json module.

    Output is canonical for a given library: sorted keys, two-space indent,
    shortest round-trip float repr. Files written by it read back
    bit-identical.
    """

    def __init__(self, lib: AbstractJsonLibrary):
        self._library = lib

    @property
    def library(self) -> AbstractJsonLibrary:
        return self._library

    @property
    def name(self) -> str:
        return getattr(self.library, "__name__", type(self.library).__name__)

    def loads(self, data: typing.Union[str, bytes]) -> dict:
        return self.library.loads(data)

    def dumps(self, obj: typing.Any) -> str:
        if self.name == "orjson":
            options = self.library.OPT_INDENT_2 | self.library.OPT_SORT_KEYS
            res = self.library.dumps(obj, option=options)
        else:
            res = self.library.dumps(
                obj, indent=2, sort_keys=True, allow_nan=False
            )
        if isinstance(res, bytes):
            return res.decode()
        return res
