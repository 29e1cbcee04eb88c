"""Schnorr-group arithmetic: parameter generation, validation, and keys.

All protocol math lives in the order-q subgroup of Z_p*, with exponents in
Z_q. `Scalar` and `GroupElement` are immutable values tagged with their
group, so mixed-group arithmetic fails loudly instead of silently wrapping.

Arithmetic is best-effort only with respect to timing side channels; this
toolkit does not attempt constant-time big-integer operations.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Optional, Union


class GroupParameterError(ValueError):
    """A (p, q, g) tuple violates the group invariants."""


class CompositeModulusError(GroupParameterError):
    """The modulus p failed primality testing."""


class CompositeOrderError(GroupParameterError):
    """The subgroup order q failed primality testing."""


class OrderNotDividingError(GroupParameterError):
    """q does not divide p - 1."""


class BadGeneratorError(GroupParameterError):
    """g is out of range, trivial, or not of order q."""


class NotInSubgroupError(ValueError):
    """An integer is not a member of the order-q subgroup."""


class GenerationError(RuntimeError):
    """Parameter search exhausted its attempt bound."""


class NonInvertibleError(ValueError):
    """Modular inverse requested for a non-unit."""


_sysrand = random.SystemRandom()


def _sieve(limit: int) -> tuple[int, ...]:
    flags = bytearray([1]) * (limit + 1)
    flags[0] = flags[1] = 0
    for i in range(2, int(limit**0.5) + 1):
        if flags[i]:
            flags[i * i :: i] = bytearray(len(flags[i * i :: i]))
    return tuple(i for i, f in enumerate(flags) if f)


_SMALL_PRIMES = _sieve(2000)


def is_probable_prime(n: int, rounds: int = 64) -> bool:
    """Miller-Rabin primality test; false positives occur w.p. <= 4**-rounds."""
    if n < 2:
        raise ValueError("primality is defined for n > 1")
    for p in _SMALL_PRIMES:
        if n == p:
            return True
        if n % p == 0:
            return False
    # n is odd and larger than every small prime
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for _ in range(rounds):
        a = _sysrand.randrange(2, n - 1)
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def mod_inv(a: int, m: int) -> int:
    """Multiplicative inverse of a modulo m; raises if gcd(a, m) != 1."""
    if m <= 0:
        raise ValueError("modulus must be positive")
    if math.gcd(a % m, m) != 1:
        raise NonInvertibleError(f"{a} has no inverse modulo {m}")
    return pow(a, -1, m)


def _check_parameters(p: int, q: int, g: int) -> None:
    if p < 3 or not is_probable_prime(p):
        raise CompositeModulusError(f"modulus {p} is not prime")
    if q < 2 or not is_probable_prime(q):
        raise CompositeOrderError(f"subgroup order {q} is not prime")
    if (p - 1) % q != 0:
        raise OrderNotDividingError(f"{q} does not divide {p} - 1")
    if not 2 <= g <= p - 1:
        raise BadGeneratorError(f"generator {g} outside [2, p-1]")
    if pow(g, q, p) != 1:
        raise BadGeneratorError(f"generator {g} does not have order {q}")


@dataclass(frozen=True)
class SchnorrGroup:
    """Public parameters (p, q, g) of a prime-order subgroup of Z_p*.

    Construction validates every invariant, so any held instance is safe
    to compute in. No minimum bit sizes are enforced here; tiny groups are
    legitimate for testing.
    """

    p: int
    q: int
    g: int

    def __post_init__(self) -> None:
        _check_parameters(self.p, self.q, self.g)

    @property
    def generator(self) -> "GroupElement":
        return GroupElement(self.g, self)

    def scalar(self, value: int) -> "Scalar":
        """Reduce an integer into Z_q."""
        return Scalar(value % self.q, self)

    def element(self, value: int) -> "GroupElement":
        """Import an untrusted integer, enforcing subgroup membership.

        Internal arithmetic stays inside the subgroup by construction;
        this check is for values crossing a trust boundary (files, wire).
        """
        elem = GroupElement(value, self)
        if pow(value, self.q, self.p) != 1:
            raise NotInSubgroupError(f"{value} is not in the order-{self.q} subgroup")
        return elem

    def random_scalar(self, rng: Optional[random.Random] = None, *, nonzero: bool = False) -> "Scalar":
        rng = rng or _sysrand
        return Scalar(rng.randrange(1 if nonzero else 0, self.q), self)


def validate_group(p: int, q: int, g: int) -> SchnorrGroup:
    """Build a group from externally supplied parameters, or raise.

    Distinct error types identify the first failed invariant: composite p,
    composite q, q not dividing p - 1, or a bad generator.
    """
    return SchnorrGroup(p, q, g)


@dataclass(frozen=True)
class Scalar:
    """An exponent-domain value in [0, q-1], tagged with its group."""

    value: int
    group: SchnorrGroup

    def __post_init__(self) -> None:
        if not 0 <= self.value < self.group.q:
            raise ValueError(f"scalar {self.value} outside [0, {self.group.q - 1}]")

    def _coerce(self, other: "Scalar") -> int:
        if not isinstance(other, Scalar):
            raise TypeError(f"expected Scalar, got {type(other).__name__}")
        if other.group != self.group:
            raise ValueError("scalars belong to different groups")
        return other.value

    def __add__(self, other: "Scalar") -> "Scalar":
        return Scalar((self.value + self._coerce(other)) % self.group.q, self.group)

    def __sub__(self, other: "Scalar") -> "Scalar":
        return Scalar((self.value - self._coerce(other)) % self.group.q, self.group)

    def __mul__(self, other: "Scalar") -> "Scalar":
        return Scalar(self.value * self._coerce(other) % self.group.q, self.group)

    def __neg__(self) -> "Scalar":
        return Scalar(-self.value % self.group.q, self.group)

    def inverse(self) -> "Scalar":
        return Scalar(mod_inv(self.value, self.group.q), self.group)

    def __int__(self) -> int:
        return self.value


@dataclass(frozen=True)
class GroupElement:
    """A value in [1, p-1], tagged with its group.

    Everything this toolkit produces is a power or product of subgroup
    members and therefore stays in the order-q subgroup; membership of
    untrusted inputs is enforced by `SchnorrGroup.element`.
    """

    value: int
    group: SchnorrGroup

    def __post_init__(self) -> None:
        if not 1 <= self.value <= self.group.p - 1:
            raise ValueError(f"element {self.value} outside [1, {self.group.p - 1}]")

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        if not isinstance(other, GroupElement):
            raise TypeError(f"expected GroupElement, got {type(other).__name__}")
        if other.group != self.group:
            raise ValueError("elements belong to different groups")
        return GroupElement(self.value * other.value % self.group.p, self.group)

    def __pow__(self, exponent: Union[Scalar, int]) -> "GroupElement":
        if isinstance(exponent, Scalar):
            if exponent.group != self.group:
                raise ValueError("exponent belongs to a different group")
            e = exponent.value
        else:
            e = exponent
        return GroupElement(pow(self.value, e, self.group.p), self.group)

    def inverse(self) -> "GroupElement":
        return GroupElement(mod_inv(self.value, self.group.p), self.group)

    def __int__(self) -> int:
        return self.value


@dataclass(frozen=True)
class KeyPair:
    """A private exponent x and its public element y = g^x mod p."""

    x: Scalar
    y: GroupElement

    @classmethod
    def from_private(cls, group: SchnorrGroup, x: int) -> "KeyPair":
        if not 1 <= x < group.q:
            raise ValueError(f"private key must lie in [1, {group.q - 1}]")
        xs = Scalar(x, group)
        return cls(x=xs, y=group.generator ** xs)


def keygen(group: SchnorrGroup, rng: Optional[random.Random] = None) -> KeyPair:
    """Draw a key pair with x uniform in [1, q-1].

    Zero is excluded: x = 0 would publish the degenerate key y = 1.
    """
    rng = rng or _sysrand
    return KeyPair.from_private(group, rng.randrange(1, group.q))


def generate_group(
    p_bits: int,
    q_bits: int,
    rng: Optional[random.Random] = None,
    *,
    max_attempts: int = 100_000,
) -> SchnorrGroup:
    """Generate fresh parameters with p and q of exactly the requested sizes.

    Picks a prime q first, searches for a prime p = q*t + 1, then lifts a
    random base k to g = k^((p-1)/q) mod p, retrying while g == 1 (each
    retry fails with probability 1/q). Raises GenerationError once
    max_attempts primality candidates have been consumed.
    """
    if p_bits < 8 or q_bits < 8:
        raise ValueError("p_bits and q_bits must both be at least 8")
    if q_bits >= p_bits:
        raise ValueError("q_bits must be smaller than p_bits")
    rng = rng or _sysrand

    attempts = 0

    def _spend() -> None:
        nonlocal attempts
        attempts += 1
        if attempts > max_attempts:
            raise GenerationError(
                f"no ({p_bits}, {q_bits})-bit group found within {max_attempts} attempts"
            )

    while True:
        q = 0
        while not q:
            _spend()
            candidate = rng.randrange(1 << (q_bits - 1), 1 << q_bits) | 1
            if is_probable_prime(candidate):
                q = candidate

        # p = q*t + 1 with t even (keeps p odd) and p exactly p_bits bits
        t_lo = ((1 << (p_bits - 1)) - 1) // q + 1
        t_hi = ((1 << p_bits) - 2) // q
        half_lo = (t_lo + 1) // 2
        half_hi = t_hi // 2
        if half_hi < half_lo:
            continue
        p = 0
        for _ in range(8 * p_bits):
            _spend()
            t = 2 * rng.randrange(half_lo, half_hi + 1)
            candidate = q * t + 1
            if is_probable_prime(candidate):
                p = candidate
                break
        if not p:
            continue  # unlucky q; restart with a fresh one

        cofactor = (p - 1) // q
        while True:
            _spend()
            k = rng.randrange(2, p - 1)
            g = pow(k, cofactor, p)
            if g > 1:
                return SchnorrGroup(p, q, g)
