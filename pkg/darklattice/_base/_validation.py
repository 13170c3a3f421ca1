import math
from typing import Any, Sequence

from typeguard import check_type, TypeCheckError

from darklattice._base._exceptions import ParameterValidationError


class _ParameterValidator:
    """
    Holds the checks run on raw model parameters before they are converted.

    Works on whatever the caller passed (lists, tuples, numpy arrays converted to lists)
    and collects every problem so that one error reports all of them.
    """

    def __init__(self, data: dict[str, Any]):
        self.problems: list[str] = []
        self.data = data

    def validate(self):
        """
        Validate model parameters.

        Raises:
            ParameterValidationError: A custom exception that includes all problems found.
        """
        self._verify_sequence("omegas")
        self._verify_sequence("g")
        self._verify_scalar("omega0")
        self._verify_lengths()

        if self.problems:
            raise ParameterValidationError(self.problems)

    def _verify_sequence(self, name: str):
        if name not in self.data:
            return
        value = self.data[name]
        if hasattr(value, "tolist"):
            value = value.tolist()
        try:
            if isinstance(value, str):
                raise TypeCheckError("is a string")
            check_type(value, Sequence)
        except TypeCheckError:
            self.problems.append(
                f"{name}: expected a sequence of real numbers, recieved {type(value).__name__}"
            )
            return
        if len(value) == 0:
            self.problems.append(f"{name}: at least one mode is required")
        for index, item in enumerate(value):
            try:
                check_type(item, float)
            except TypeCheckError:
                self.problems.append(
                    f"{name}[{index}]: expected a real number, recieved {type(item).__name__}"
                )
                continue
            if not math.isfinite(item):
                self.problems.append(f"{name}[{index}]: value is not finite ({item})")

    def _verify_scalar(self, name: str):
        if name not in self.data:
            return
        value = self.data[name]
        if hasattr(value, "item"):
            value = value.item()
        try:
            check_type(value, float)
        except TypeCheckError:
            self.problems.append(f"{name}: expected a real number, recieved {type(value).__name__}")
            return
        if not math.isfinite(value):
            self.problems.append(f"{name}: value is not finite ({value})")

    def _verify_lengths(self):
        omegas, g = self.data.get("omegas"), self.data.get("g")
        if omegas is None or g is None:
            return
        try:
            if len(omegas) != len(g):
                self.problems.append(
                    f"omegas/g: one frequency per coupling is required "
                    f"({len(omegas)} frequencies, {len(g)} couplings)"
                )
        except TypeError:
            pass
