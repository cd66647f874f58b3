"""
分圆域精确运算模块

在 Q(ζ_N) 中进行精确运算：元素用幂基 1, ζ, …, ζ^{φ(N)-1} 上的有理系数表示，
系数由模第N个分圆多项式约化得到，因此规范形式唯一，可以直接用于判等和去重。
所有群元素的矩阵元和迹都在这里计算
"""

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple, Union

import sympy
from sympy import Symbol, cyclotomic_poly, mobius, totient

from mckay_dual.common.errors import FieldArithmeticError

Rational = Union[int, Fraction]

_x = Symbol("x")


@lru_cache(maxsize=None)
def euler_phi(order: int) -> int:
    """欧拉函数 φ(N)，即 Q(ζ_N) 的次数"""
    return int(totient(order))


@lru_cache(maxsize=None)
def _power_table(order: int) -> Tuple[Tuple[int, ...], ...]:
    """
    计算 ζ_N^k (k = 0..N-1) 在幂基下的整数坐标

    参数:
        order: 分圆域的阶 N

    返回:
        长度为N的元组，第k项是 ζ^k 的规范坐标
    """
    # 首项系数在前：x^d + a_{d-1} x^{d-1} + ... + a_0
    leading_first = [int(c) for c in cyclotomic_poly(order, _x, polys=True).all_coeffs()]
    degree = len(leading_first) - 1
    low = list(reversed(leading_first))[:degree]

    table = []
    current = [0] * degree
    current[0] = 1
    for _ in range(order):
        table.append(tuple(current))
        top = current[-1]
        shifted = [0] + current[:-1]
        current = [shifted[i] - top * low[i] for i in range(degree)]
    return tuple(table)


@lru_cache(maxsize=None)
def _trace_weights(order: int) -> Tuple[Fraction, ...]:
    """ζ_N^k 的归一化迹 μ(N/g)/φ(N/g)，g = gcd(k, N)，与所在域无关"""
    weights = []
    for k in range(euler_phi(order)):
        g = math.gcd(k, order)
        weights.append(Fraction(int(mobius(order // g)), euler_phi(order // g)))
    return tuple(weights)


def _reduce_full(order: int, full: Sequence[Rational]) -> Tuple[Fraction, ...]:
    """把 Σ full[k] ζ^k (k < N) 约化为规范坐标"""
    table = _power_table(order)
    result = [Fraction(0)] * len(table[0])
    for k, c in enumerate(full):
        if not c:
            continue
        for t, v in enumerate(table[k]):
            if v:
                result[t] += c * v
    return tuple(result)


@dataclass(frozen=True, eq=False)
class CyclotomicNumber:
    """
    Q(ζ_N) 中的精确元素

    coeffs 是幂基 1, ζ_N, …, ζ_N^{φ(N)-1} 上的有理系数。
    不同阶的两个元素参与运算时，先提升到两阶的最小公倍数
    """
    order: int
    coeffs: Tuple[Fraction, ...]

    def __post_init__(self):
        if self.order < 1:
            raise FieldArithmeticError(f"分圆域的阶必须为正整数，当前为 {self.order}")
        if len(self.coeffs) != euler_phi(self.order):
            raise FieldArithmeticError(
                f"Q(ζ_{self.order}) 的系数向量长度应为 {euler_phi(self.order)}，"
                f"当前为 {len(self.coeffs)}"
            )

    # ---------- 构造 ----------

    @classmethod
    def from_exponents(cls, order: int, terms: Dict[int, Rational]) -> "CyclotomicNumber":
        """由 {k: c_k} 形式的 Σ c_k ζ_N^k 构造，指数可以是任意整数"""
        if order < 1:
            raise FieldArithmeticError(f"分圆域的阶必须为正整数，当前为 {order}")
        full: List[Fraction] = [Fraction(0)] * order
        for k, c in terms.items():
            full[k % order] += Fraction(c)
        return cls(order, _reduce_full(order, full))

    @classmethod
    def from_rational(cls, order: int, value: Rational) -> "CyclotomicNumber":
        return cls.from_exponents(order, {0: value})

    @classmethod
    def zero(cls, order: int) -> "CyclotomicNumber":
        return cls.from_rational(order, 0)

    @classmethod
    def one(cls, order: int) -> "CyclotomicNumber":
        return cls.from_rational(order, 1)

    # ---------- 域之间的提升 ----------

    def lift(self, order: int) -> "CyclotomicNumber":
        """把元素精确嵌入 Q(ζ_M)，要求 N 整除 M"""
        if order == self.order:
            return self
        if order % self.order != 0:
            raise FieldArithmeticError(f"Q(ζ_{self.order}) 不是 Q(ζ_{order}) 的子域")
        step = order // self.order
        full: List[Fraction] = [Fraction(0)] * order
        for i, c in enumerate(self.coeffs):
            if c:
                full[i * step] += c
        return CyclotomicNumber(order, _reduce_full(order, full))

    def _coerce(self, other: object) -> "CyclotomicNumber":
        if isinstance(other, CyclotomicNumber):
            return other
        if isinstance(other, (int, Fraction)):
            return CyclotomicNumber.from_rational(self.order, other)
        return NotImplemented

    def _common(self, other: "CyclotomicNumber") -> Tuple["CyclotomicNumber", "CyclotomicNumber"]:
        if self.order == other.order:
            return self, other
        order = self.order * other.order // math.gcd(self.order, other.order)
        return self.lift(order), other.lift(order)

    # ---------- 域运算 ----------

    def __add__(self, other: object) -> "CyclotomicNumber":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._common(other)
        return CyclotomicNumber(a.order, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> "CyclotomicNumber":
        return CyclotomicNumber(self.order, tuple(-c for c in self.coeffs))

    def __sub__(self, other: object) -> "CyclotomicNumber":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: object) -> "CyclotomicNumber":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other: object) -> "CyclotomicNumber":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._common(other)
        order = a.order
        full: List[Fraction] = [Fraction(0)] * order
        for i, ca in enumerate(a.coeffs):
            if not ca:
                continue
            for j, cb in enumerate(b.coeffs):
                if cb:
                    full[(i + j) % order] += ca * cb
        return CyclotomicNumber(order, _reduce_full(order, full))

    __rmul__ = __mul__

    def inverse(self) -> "CyclotomicNumber":
        """
        乘法逆元

        在幂基下把"乘以self"写成有理矩阵，精确求解 M·x = e_0
        """
        if self.is_zero():
            raise FieldArithmeticError("分圆域中除以零")
        if self.is_rational():
            return CyclotomicNumber.from_rational(self.order, 1 / self.coeffs[0])

        degree = len(self.coeffs)
        columns = []
        for t in range(degree):
            column = (self * CyclotomicNumber.root_of_unity(self.order, t)).coeffs
            columns.append([sympy.Rational(c.numerator, c.denominator) for c in column])
        matrix = sympy.Matrix(columns).T
        rhs = sympy.Matrix([1] + [0] * (degree - 1))
        solution = matrix.LUsolve(rhs)
        coeffs = tuple(_to_fraction(v) for v in solution)
        return CyclotomicNumber(self.order, coeffs)

    def __truediv__(self, other: object) -> "CyclotomicNumber":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other: object) -> "CyclotomicNumber":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, exponent: int) -> "CyclotomicNumber":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = CyclotomicNumber.one(self.order)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def conjugate(self) -> "CyclotomicNumber":
        """复共轭：ζ_N^k ↦ ζ_N^{N-k}"""
        full: List[Fraction] = [Fraction(0)] * self.order
        for k, c in enumerate(self.coeffs):
            if c:
                full[(-k) % self.order] += c
        return CyclotomicNumber(self.order, _reduce_full(self.order, full))

    # ---------- 判等与查询 ----------

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def galois_normalized_trace(self) -> Fraction:
        """Tr(a)/φ(N)：与所在分圆域无关的有理不变量"""
        return sum((c * w for c, w in zip(self.coeffs, _trace_weights(self.order))), Fraction(0))

    def __eq__(self, other: object) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._common(other)
        return a.coeffs == b.coeffs

    def __hash__(self) -> int:
        # 相等的元素归一化迹相同，提升前后哈希一致
        return hash(self.galois_normalized_trace())

    # ---------- 数值嵌入 ----------

    def embed_complex(self) -> complex:
        """在 ζ_N = exp(2πi/N) 下的复数值"""
        total = 0j
        for k, c in enumerate(self.coeffs):
            if c:
                total += float(c) * cmath.exp(2j * math.pi * k / self.order)
        return total

    def __complex__(self) -> complex:
        return self.embed_complex()

    def __repr__(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            if k == 0:
                terms.append(str(c))
            else:
                terms.append(f"{c}*z{self.order}^{k}")
        return " + ".join(terms) if terms else "0"

    @staticmethod
    def root_of_unity(order: int, k: int) -> "CyclotomicNumber":
        return root_of_unity(order, k)


def root_of_unity(order: int, k: int) -> CyclotomicNumber:
    """
    返回 ζ_N^k 的规范形式

    参数:
        order: 正整数 N
        k: 任意整数指数

    返回:
        CyclotomicNumber，乘法阶为 N/gcd(N, k mod N)
    """
    if order < 1:
        raise FieldArithmeticError(f"单位根的阶必须为正整数，当前为 {order}")
    return CyclotomicNumber.from_exponents(order, {k: 1})


def embed_complex(value: CyclotomicNumber) -> complex:
    return value.embed_complex()


def imaginary_unit(order: int) -> CyclotomicNumber:
    """Q(ζ_N) 中的 i，要求 4 | N"""
    if order % 4:
        raise FieldArithmeticError(f"Q(ζ_{order}) 不含 i")
    return root_of_unity(order, order // 4)


def sqrt2(order: int) -> CyclotomicNumber:
    """√2 = ζ_8 + ζ_8^{-1}，要求 8 | N"""
    if order % 8:
        raise FieldArithmeticError(f"Q(ζ_{order}) 不含 √2")
    step = order // 8
    return CyclotomicNumber.from_exponents(order, {step: 1, -step: 1})


def sqrt5(order: int) -> CyclotomicNumber:
    """√5 = 1 + 2(ζ_5 + ζ_5^4)，要求 5 | N"""
    if order % 5:
        raise FieldArithmeticError(f"Q(ζ_{order}) 不含 √5")
    step = order // 5
    return CyclotomicNumber.from_exponents(order, {0: 1, step: 2, 4 * step: 2})


def golden_ratio(order: int) -> CyclotomicNumber:
    """τ = (1 + √5)/2"""
    return (sqrt5(order) + 1) * Fraction(1, 2)


def _to_fraction(value: sympy.Expr) -> Fraction:
    rational = sympy.Rational(value)
    return Fraction(int(rational.p), int(rational.q))
