"""Prime-field arithmetic and the zero-constant-term message polynomials
that index character-polynomial codewords."""

from dataclasses import dataclass


def _is_prime(p):
    # deterministic trial division; moduli here are small (p <= a few hundred)
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class PrimeModulus:
    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or isinstance(self.p, bool):
            raise TypeError(f"modulus must be an int, got {type(self.p).__name__}")
        if self.p < 3 or not _is_prime(self.p):
            raise ValueError(f"modulus must be a prime >= 3, got {self.p}")

    def element(self, value):
        return FieldElement(value % self.p, self)


@dataclass(frozen=True)
class FieldElement:
    """Canonical residue in [0, p)."""

    value: int
    modulus: PrimeModulus

    def __post_init__(self):
        if not (0 <= self.value < self.modulus.p):
            raise ValueError(f"residue {self.value} out of range for p={self.modulus.p}")

    def _check(self, other):
        if not isinstance(other, FieldElement):
            raise TypeError("expected a FieldElement")
        if other.modulus != self.modulus:
            raise ValueError(
                f"modulus mismatch: {self.modulus.p} vs {other.modulus.p}"
            )

    def __add__(self, other):
        self._check(other)
        return FieldElement((self.value + other.value) % self.modulus.p, self.modulus)

    def __sub__(self, other):
        self._check(other)
        return FieldElement((self.value - other.value) % self.modulus.p, self.modulus)

    def __mul__(self, other):
        self._check(other)
        return FieldElement((self.value * other.value) % self.modulus.p, self.modulus)

    def __pow__(self, exponent):
        if isinstance(exponent, FieldElement):
            exponent = exponent.value
        if exponent < 0:
            raise ValueError("exponent must be nonnegative")
        return FieldElement(pow(self.value, exponent, self.modulus.p), self.modulus)


def field_arith(a, b, op):
    """Dispatch helper over {add, sub, mul, pow}.

    For pow, b's residue is read as a plain nonnegative integer exponent.
    """
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "pow":
        return a ** b
    raise ValueError(f"unknown op {op!r}")


@dataclass(frozen=True)
class MessagePolynomial:
    """f(X) = f_1 X + f_2 X^2 + ... + f_k X^k over F_p (no constant term).

    coefficients[j] holds f_{j+1}; trailing zeros are allowed so the tuple
    length always equals the degree bound k.
    """

    coefficients: tuple
    modulus: PrimeModulus

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(self.coefficients))
        p = self.modulus.p
        for j, c in enumerate(self.coefficients):
            if not (0 <= c < p):
                raise ValueError(f"coefficient {c} at degree {j + 1} out of range")
            # degree j+1 divisible by p must carry a zero coefficient
            if (j + 1) % p == 0 and c != 0:
                raise ValueError(f"coefficient at degree {j + 1} must vanish (p={p})")

    @property
    def k(self):
        return len(self.coefficients)

    def index(self):
        """Base-p positional encoding of (f_1, ..., f_k), f_1 most significant."""
        m = 0
        for c in self.coefficients:
            m = m * self.modulus.p + c
        return m


def poly_eval(f, x):
    """Evaluate f at x by Horner's rule. Returns a FieldElement."""
    if not isinstance(x, FieldElement):
        raise TypeError("evaluation point must be a FieldElement")
    if x.modulus != f.modulus:
        raise ValueError(f"modulus mismatch: {f.modulus.p} vs {x.modulus.p}")
    p = f.modulus.p
    acc = 0
    for c in reversed(f.coefficients):
        acc = (acc * x.value + c) % p
    # one final multiply supplies the missing constant term's x factor
    return FieldElement((acc * x.value) % p, f.modulus)


def message_from_index(modulus, k, index):
    """Inverse of MessagePolynomial.index for fixed (p, k)."""
    p = modulus.p
    if not (0 <= index < p ** k):
        raise ValueError(f"index {index} out of range for p={p}, k={k}")
    digits = []
    m = index
    for _ in range(k):
        digits.append(m % p)
        m //= p
    return MessagePolynomial(tuple(reversed(digits)), modulus)


def enumerate_cp_messages(modulus, k):
    """Yield all p^k message polynomials in index order (index 0 = zero poly).

    k >= p is rejected: the evaluation-code regime here has k <= n <= p-1, and
    allowing k >= p would force skipped coefficients at degrees divisible by p.
    """
    p = modulus.p
    if not (0 <= k < p):
        raise ValueError(f"need 0 <= k < p, got k={k}, p={p}")
    digits = [0] * k
    for _ in range(p ** k):
        yield MessagePolynomial(tuple(digits), modulus)
        # odometer increment on (f_1,...,f_k), least-significant digit last
        i = k - 1
        while i >= 0:
            digits[i] += 1
            if digits[i] < p:
                break
            digits[i] = 0
            i -= 1
