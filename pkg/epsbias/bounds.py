"""Closed-form bounds on random shortening, and planners built on them.

Everything that involves an exponent of order n is evaluated as a
natural logarithm first. Probabilities are clamped to [0, 1] only when
they are reported, and the raw log value travels alongside.

Planners collect every precondition as a named Precondition so callers
can print a checklist; the first failed one is raised as
InfeasibleParameters.
"""
import logging
import math
from dataclasses import asdict, dataclass, field

from scipy.optimize import bisect
from scipy.special import gammaln

from errors import DomainError, InfeasibleParameters, InvariantViolation, OddMoment

logger = logging.getLogger(__name__)

# corollary bound on the relative dual distance of the mother code
COR_DUAL_DISTANCE_LIMIT = 1 / 8100
COR_DISTANCE_EXPONENT = 0.6


def _log_q(q: int, x: float) -> float:
    return math.log(x) / math.log(q)


def _clamp_exp(log_value: float) -> float:
    """exp(log_value) clamped to [0, 1]."""
    if log_value >= 0:
        return 1.0
    return math.exp(log_value)


def _check_alphabet(q: int) -> None:
    if q < 2:
        raise DomainError(f"alphabet size must be at least 2, got {q}")


# ----------------------------------------------------------------------
# Entropy and the Johnson bound
# ----------------------------------------------------------------------

def entropy_q(q: int, x: float) -> float:
    """q-ary entropy H_q(x) with 0 log 0 = 0.

    Raises:
        DomainError: x outside [0, 1]
    """
    _check_alphabet(q)
    if not 0 <= x <= 1:
        raise DomainError(f"entropy argument must lie in [0, 1], got {x}")
    value = 0.0
    if x > 0:
        value += x * _log_q(q, q - 1) - x * _log_q(q, x)
    if x < 1:
        value -= (1 - x) * _log_q(q, 1 - x)
    return value


def entropy_inequality_margin(q: int, x: float, gamma: float) -> float:
    """-(1+2 gamma) x log_q x - H_q(x), positive for small enough x.

    Raises:
        DomainError: gamma outside (0, 1/4) or x outside (0, (1/q)^(1/gamma))
    """
    if not 0 < gamma < 0.25:
        raise DomainError(f"gamma must lie in (0, 1/4), got {gamma}")
    limit = (1 / q) ** (1 / gamma)
    if not 0 < x < limit:
        raise DomainError(f"x must lie in (0, {limit:.6g}), got {x}")
    return -(1 + 2 * gamma) * x * _log_q(q, x) - entropy_q(q, x)


def johnson_radius(q: int, delta: float) -> float:
    """J_q(delta) = (1 - 1/q)(1 - sqrt(1 - q delta / (q-1)))."""
    _check_alphabet(q)
    top = (q - 1) / q
    if not 0 <= delta <= top + 1e-12:
        raise DomainError(f"relative distance must lie in [0, {top:.6g}], got {delta}")
    inner = max(0.0, 1 - q * delta / (q - 1))
    return top * (1 - math.sqrt(inner))


def johnson_threshold(q: int, delta: float) -> float:
    """2(q-1) sqrt(((q-1)/q)((q-1)/q - delta)): the bias level of the Johnson count."""
    _check_alphabet(q)
    top = (q - 1) / q
    if not 0 <= delta <= top + 1e-12:
        raise DomainError(f"relative distance must lie in [0, {top:.6g}], got {delta}")
    return 2 * (q - 1) * math.sqrt(top * max(0.0, top - delta))


def johnson_ceps_bound(q: int, delta: float, n: int) -> tuple[float, float]:
    """(eps_threshold, q^2 delta n^2): |C_eps| is at most the count at that eps.

    Raises:
        DomainError: delta outside [0, (q-1)/q]
    """
    return johnson_threshold(q, delta), q * q * delta * n * n


def delta_window_lower(q: int, epsilon: float) -> float:
    """(q-1)/q - (q/(q-1)) (eps/(2(q-1)))^2: distances above it make the count useful."""
    return (q - 1) / q - (q / (q - 1)) * (epsilon / (2 * (q - 1))) ** 2


def plotkin_gap(q: int, rate: float, delta: float) -> float:
    """1 - (q/(q-1)) delta - R; positive below the Plotkin line."""
    return 1 - (q / (q - 1)) * delta - rate


# ----------------------------------------------------------------------
# Hitting and bias after shortening
# ----------------------------------------------------------------------

def miss_probability_bound(delta: float, s_count: int) -> float:
    """(1 - delta)^s: chance a uniform s-set misses a word of relative weight delta."""
    if not 0 <= delta <= 1:
        raise DomainError(f"relative weight must lie in [0, 1], got {delta}")
    if s_count < 0:
        raise DomainError(f"shortening size must be non-negative, got {s_count}")
    return (1 - delta) ** s_count


def hitting_walk_bound(delta: float, lambda2: float, s_count: int) -> float:
    """((1 - delta) + lambda2 delta)^s, the spectral estimate for walk samplers."""
    if not 0 <= delta <= 1 or not 0 <= lambda2 <= 1:
        raise DomainError("delta and lambda2 must lie in [0, 1]")
    return ((1 - delta) + lambda2 * delta) ** s_count


def shortened_bias_bound(epsilon: float, n: int, s_count: int) -> float:
    """(eps n + s) / (n - s): bias of an eps-biased code after s-shortening.

    Raises:
        DomainError: s_count >= n or negative
    """
    if not 0 <= s_count < n:
        raise DomainError(f"need 0 <= s < n, got s={s_count}, n={n}")
    return (epsilon * n + s_count) / (n - s_count)


def thm1ex_bias(q: int, delta: float, s_fraction: float) -> float:
    """Bias reached when a fraction s of positions hits every Johnson-bad word."""
    if not 0 <= s_fraction < 1:
        raise DomainError(f"shortening fraction must lie in [0, 1), got {s_fraction}")
    return (johnson_threshold(q, delta) + s_fraction) / (1 - s_fraction)


def shortened_rate(rate: float, s_fraction: float) -> float:
    """(R - s) / (1 - s), the rate of an s-shortening that loses s n dimensions."""
    if not 0 <= s_fraction < 1:
        raise DomainError(f"shortening fraction must lie in [0, 1), got {s_fraction}")
    return (rate - s_fraction) / (1 - s_fraction)


def relative_distance_after_shortening(delta: float, n: int, s_count: int) -> float:
    """delta n / (n - s)."""
    if not 0 <= s_count < n:
        raise DomainError(f"need 0 <= s < n, got s={s_count}, n={n}")
    return delta * n / (n - s_count)


# ----------------------------------------------------------------------
# Moments, tails and counts
# ----------------------------------------------------------------------

def moment_bound(n: int, d: int) -> int:
    """2 (2n)^(d/2) (d/2)!, as an exact integer.

    Raises:
        OddMoment: d odd or below 2
    """
    if d < 2 or d % 2:
        raise OddMoment(f"moment order must be even and >= 2, got {d}")
    half = d // 2
    return 2 * (2 * n) ** half * math.factorial(half)


def log_moment_bound(n: int, d: int) -> float:
    """Natural log of moment_bound, for orders where the integer is unwieldy."""
    if d < 2 or d % 2:
        raise OddMoment(f"moment order must be even and >= 2, got {d}")
    half = d / 2
    return math.log(2) + half * math.log(2 * n) + float(gammaln(half + 1))


def tail_bound(n: int, d: int, epsilon: float) -> float:
    """min(1, 4 sqrt(pi d) (delta/(eps^2 e))^(delta n / 2)) with delta = d/n."""
    if not 0 < d <= n:
        raise DomainError(f"need 0 < d <= n, got d={d}, n={n}")
    if epsilon <= 0:
        raise DomainError(f"epsilon must be positive, got {epsilon}")
    delta = d / n
    log_value = (math.log(4) + 0.5 * math.log(math.pi * d)
                 + (d / 2) * math.log(delta / (epsilon ** 2 * math.e)))
    return _clamp_exp(log_value)


def log_word_not_biased_probability(q: int, d: int, n: int, epsilon: float) -> float:
    """log of 8(q-1) sqrt(pi delta n) (2 delta/(eps^2 e))^(delta n/2)."""
    _check_alphabet(q)
    if not 0 < d <= n:
        raise DomainError(f"need 0 < d <= n, got d={d}, n={n}")
    if epsilon <= 0:
        raise DomainError(f"epsilon must be positive, got {epsilon}")
    delta = d / n
    return (math.log(8 * (q - 1)) + 0.5 * math.log(math.pi * delta * n)
            + (delta * n / 2) * math.log(2 * delta / (epsilon ** 2 * math.e)))


def word_not_biased_probability_bound(q: int, d: int, n: int, epsilon: float) -> float:
    """Chance a random codeword of a code with dual distance d is not eps-biased.

    Uses the prefactor 8(q-1) sqrt(pi delta n) with delta = d/n.
    """
    return _clamp_exp(log_word_not_biased_probability(q, d, n, epsilon))


def log_ceps_moment_bound(q: int, rate: float, dual_delta: float, n: int,
                          epsilon: float) -> float:
    """Natural log of ceps_moment_bound."""
    _check_alphabet(q)
    if not 0 < dual_delta <= 1:
        raise DomainError(f"relative dual distance must lie in (0, 1], got {dual_delta}")
    if not 0 < rate <= 1:
        raise DomainError(f"rate must lie in (0, 1], got {rate}")
    if dual_delta * n < 1:
        raise DomainError(f"dual distance {dual_delta * n:.3g} is below one symbol")
    if epsilon <= 0:
        raise DomainError(f"epsilon must be positive, got {epsilon}")
    return (math.log(8 * q) + 0.5 * math.log(math.pi * dual_delta * n)
            + (dual_delta * n / 2) * math.log(2 * dual_delta / (epsilon ** 2 * math.e))
            + rate * n * math.log(q))


def ceps_moment_bound(q: int, rate: float, dual_delta: float, n: int,
                      epsilon: float) -> float:
    """8q sqrt(pi d n) (2 d/(eps^2 e))^(d n/2) q^(R n) with d the relative dual distance.

    Returns math.inf when the value overflows a double.
    """
    log_value = log_ceps_moment_bound(q, rate, dual_delta, n, epsilon)
    if log_value > 700:
        return math.inf
    return math.exp(log_value)


def log_union_bound_failure(count_bound: float, delta: float, s_count: float) -> float:
    """log(count (1 - delta)^s), unclamped; -inf when the product is zero.

    s_count may be fractional: the planners pass s n as well as floor(s n).
    """
    if count_bound <= 0 or (delta >= 1 and s_count > 0):
        return -math.inf
    return math.log(count_bound) + s_count * math.log1p(-delta)


def union_bound_failure(count_bound: float, delta: float, s_count: int) -> float:
    """min(1, count (1 - delta)^s)."""
    return _clamp_exp(log_union_bound_failure(count_bound, delta, s_count))


# ----------------------------------------------------------------------
# Planners
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class Precondition:
    """One named inequality lhs < rhs (or lhs <= rhs) checked by a planner."""
    name: str
    lhs: float
    rhs: float
    passed: bool


@dataclass(frozen=True)
class PlanResult:
    """Shortening size and guarantees prescribed by one of the theorems.

    Attributes:
        theorem: planner name ('thm1', 'thm2', 'cor')
        s_fraction: prescribed shortening fraction s
        s_count: floor(s n)
        eps_inner: internal eps' (0.9 eps for the dual-distance theorems)
        predicted_failure: union-bound failure probability in [0, 1] with s n
            positions, a function of the fractions that never grows with n
        log_predicted_failure: the same bound as an unclamped natural log
        rate_floor: guaranteed rate of the shortened code
        bias_bound: bias guaranteed when every bad word is hit
        gamma: rate slack used by the planner
        preconditions: the checklist evaluated on the way
        failure_at_count: the union bound with floor(s n) positions instead of s n
    """
    theorem: str
    s_fraction: float
    s_count: int
    eps_inner: float | None
    predicted_failure: float
    log_predicted_failure: float
    rate_floor: float
    bias_bound: float
    gamma: float
    preconditions: tuple[Precondition, ...] = ()
    feasible: bool = True
    reason: str = ""
    failure_at_count: float | None = None

    def to_dict(self) -> dict:
        out = asdict(self)
        out['preconditions'] = [asdict(p) for p in self.preconditions]
        if math.isinf(self.log_predicted_failure):
            out['log_predicted_failure'] = None
        return out


@dataclass(frozen=True)
class TwoStagePlan:
    """Distance amplification by a first shortening, then plan_thm1.

    Attributes:
        s1_fraction: first-stage fraction j/n
        s1_count: j
        amplified_delta: delta / (1 - s1)
        amplified_rate: (R - s1) / (1 - s1)
        stage2: plan_thm1 result on the amplified code of length n - j
        rate_floor: beta R
    """
    s1_fraction: float
    s1_count: int
    amplified_delta: float
    amplified_rate: float
    stage2: PlanResult
    rate_floor: float
    preconditions: tuple[Precondition, ...] = ()

    @property
    def total_s_count(self) -> int:
        return self.s1_count + self.stage2.s_count

    @property
    def predicted_failure(self) -> float:
        return self.stage2.predicted_failure

    def to_dict(self) -> dict:
        out = {key: value for key, value in asdict(self).items()
               if key not in ('stage2', 'preconditions')}
        out['stage2'] = self.stage2.to_dict()
        out['preconditions'] = [asdict(p) for p in self.preconditions]
        out['total_s_count'] = self.total_s_count
        return out


@dataclass
class _Checklist:
    items: list = field(default_factory=list)

    def less(self, name: str, lhs: float, rhs: float) -> bool:
        passed = lhs < rhs
        self.items.append(Precondition(name, float(lhs), float(rhs), passed))
        return passed

    def raise_first_failure(self) -> None:
        for item in self.items:
            if not item.passed:
                error = InfeasibleParameters(
                    item.name, f"{item.lhs:.6g} < {item.rhs:.6g} fails",
                    lhs=item.lhs, rhs=item.rhs)
                error.preconditions = self.freeze()
                raise error

    def freeze(self) -> tuple[Precondition, ...]:
        return tuple(self.items)


def plan_thm1(q: int, rate: float, delta: float, gamma: float, epsilon: float,
              n: int) -> PlanResult:
    """Random shortening of a code with distance near (q-1)/q.

    s = min{gamma/(1+gamma), R/2, eps/2 - (q-1) sqrt(((q-1)/q)((q-1)/q - delta))}
    and the failure prediction is the Johnson count times (1-delta)^s.

    Raises:
        InfeasibleParameters: a precondition fails, s <= 0 or floor(s n) = 0
    """
    _check_alphabet(q)
    checks = _Checklist()
    checks.less('delta_above_window', delta_window_lower(q, epsilon), delta)
    checks.less('delta_below_plotkin', delta, (q - 1) / q)
    checks.less('gamma_positive', 0.0, gamma)
    checks.less('gamma_below_rate', gamma, rate)
    checks.raise_first_failure()

    threshold, count = johnson_ceps_bound(q, delta, n)
    s_fraction = min(gamma / (1 + gamma), rate / 2, epsilon / 2 - threshold / 2)
    checks.less('shortening_positive', 0.0, s_fraction)
    checks.raise_first_failure()
    s_count = math.floor(s_fraction * n)
    checks.less('shortening_count_positive', 0, s_count)
    checks.raise_first_failure()

    log_failure = log_union_bound_failure(count, delta, s_fraction * n)
    plan = PlanResult(
        theorem='thm1', s_fraction=s_fraction, s_count=s_count, eps_inner=threshold,
        predicted_failure=_clamp_exp(log_failure), log_predicted_failure=log_failure,
        rate_floor=rate - gamma, bias_bound=shortened_bias_bound(threshold, n, s_count),
        gamma=gamma, preconditions=checks.freeze(),
        failure_at_count=union_bound_failure(count, delta, s_count))
    logger.debug("plan_thm1: s=%.6f, s_count=%d, failure<=%.3g",
                 s_fraction, s_count, plan.predicted_failure)
    return plan


def plan_thm12(q: int, rate: float, delta: float, beta: float, epsilon: float,
               n: int) -> TwoStagePlan:
    """First shorten to push the distance into the plan_thm1 window, then plan_thm1.

    The first stage scans s1 = j/n upward from the smallest grid point
    with delta/(1 - s1) above the window, stopping at the first j whose
    second stage is feasible. The second stage uses half of the rate
    slack, gamma = ((R - s1)/(1 - s1) - beta R) / 2.

    Raises:
        InfeasibleParameters: the displayed precondition fails or no grid
            point yields a feasible second stage
    """
    _check_alphabet(q)
    checks = _Checklist()
    lower = delta_window_lower(q, epsilon)
    checks.less('beta_positive', 0.0, beta)
    checks.less('beta_below_one', beta, 1.0)
    checks.less('amplified_delta_above_window', lower,
                delta / (1 - (1 - beta) * rate) if (1 - beta) * rate < 1 else math.inf)
    checks.raise_first_failure()

    s1_limit = (1 - beta) * rate
    last_failure = None
    for j in range(0, n):
        s1 = j / n
        if s1 >= s1_limit:
            break
        amplified = delta / (1 - s1)
        if amplified <= lower:
            continue
        if amplified >= (q - 1) / q:
            break
        amplified_rate = shortened_rate(rate, s1)
        gamma = (amplified_rate - beta * rate) / 2
        try:
            stage2 = plan_thm1(q, amplified_rate, amplified, gamma, epsilon, n - j)
        except InfeasibleParameters as e:
            last_failure = e
            continue
        checks.less('first_stage_below_rate_slack', s1, s1_limit)
        logger.debug("plan_thm12: s1=%d/%d, second stage s_count=%d", j, n, stage2.s_count)
        return TwoStagePlan(s1, j, amplified, amplified_rate, stage2, beta * rate,
                            checks.freeze())
    detail = f"last second-stage failure: {last_failure}" if last_failure else ""
    raise InfeasibleParameters('first_stage_grid', detail)


def thm2_shortening_fraction(q: int, rate: float, delta: float, dual_delta: float,
                             gamma: float) -> float:
    """(R - (1/2 - 2 gamma) H_q(dual_delta)) / (-log_q(1 - delta)), unchecked."""
    if not 0 < delta < 1:
        raise DomainError(f"relative distance must lie in (0, 1), got {delta}")
    return ((rate - (0.5 - 2 * gamma) * entropy_q(q, dual_delta))
            / -_log_q(q, 1 - delta))


def _dual_distance_plan(theorem: str, q: int, rate: float, delta: float,
                        dual_delta: float, gamma: float, epsilon: float, n: int,
                        checks: _Checklist) -> PlanResult:
    """Shared tail of plan_thm2 and plan_cor once their preconditions hold."""
    eps_inner = 0.9 * epsilon
    s_fraction = thm2_shortening_fraction(q, rate, delta, dual_delta, gamma)
    checks.less('shortening_positive', 0.0, s_fraction)
    checks.raise_first_failure()
    if not s_fraction < 0.9 * rate:
        raise InvariantViolation(f"s={s_fraction:.6g} is not below 0.9R={0.9 * rate:.6g}")
    if not s_fraction < 0.05 * eps_inner:
        raise InvariantViolation(
            f"s={s_fraction:.6g} is not below 0.05 eps'={0.05 * eps_inner:.6g}")
    s_count = math.floor(s_fraction * n)
    checks.less('shortening_count_positive', 0, s_count)
    checks.raise_first_failure()

    bias_bound = shortened_bias_bound(eps_inner, n, s_count)
    if bias_bound > epsilon:
        raise InvariantViolation(
            f"shortened bias bound {bias_bound:.6g} exceeds eps={epsilon:.6g}")
    log_count = log_ceps_moment_bound(q, rate, dual_delta, n, eps_inner)
    log_failure = log_count + s_fraction * n * math.log1p(-delta)
    plan = PlanResult(
        theorem=theorem, s_fraction=s_fraction, s_count=s_count, eps_inner=eps_inner,
        predicted_failure=_clamp_exp(log_failure), log_predicted_failure=log_failure,
        rate_floor=0.1 * rate, bias_bound=bias_bound, gamma=gamma,
        preconditions=checks.freeze(),
        failure_at_count=_clamp_exp(log_count + s_count * math.log1p(-delta)))
    logger.debug("%s: s=%.6g, s_count=%d, log failure bound %.4g",
                 theorem, s_fraction, s_count, log_failure)
    return plan


def thm2_rate_limit(q: int, delta: float, dual_delta: float, gamma: float) -> float:
    """((1/2 - 2 gamma) / (1 + 0.9 log_q(1 - delta))) H_q(dual_delta)."""
    return ((0.5 - 2 * gamma) / (1 + 0.9 * _log_q(q, 1 - delta))
            * entropy_q(q, dual_delta))


def plan_thm2(q: int, rate: float, delta: float, dual_delta: float, gamma: float,
              epsilon: float, n: int) -> PlanResult:
    """Random shortening of a code with small dual distance.

    Raises:
        InfeasibleParameters: naming the failed precondition
        InvariantViolation: a derived inequality fails on feasible input
    """
    _check_alphabet(q)
    checks = _Checklist()
    checks.less('gamma_positive', 0.0, gamma)
    checks.less('gamma_below_quarter', gamma, 0.25)
    checks.less('delta_in_unit_interval', delta, 1.0)
    checks.less('dual_delta_positive', 0.0, dual_delta)
    checks.raise_first_failure()
    distance_term = 1 + _log_q(q, 1 - delta)
    checks.less('distance_term_positive', 0.0, distance_term)
    checks.less('dual_below_eps_power', dual_delta, epsilon ** (1 / gamma))
    checks.less('dual_below_distance_term', dual_delta, (distance_term / 36) ** 2)
    checks.less('dual_below_alphabet_power', dual_delta, (1 / q) ** (1 / gamma))
    checks.less('rate_positive', 0.0, rate)
    checks.raise_first_failure()
    checks.less('rate_below_limit', rate, thm2_rate_limit(q, delta, dual_delta, gamma))
    checks.raise_first_failure()
    return _dual_distance_plan('thm2', q, rate, delta, dual_delta, gamma, epsilon, n, checks)


@dataclass(frozen=True)
class CorollaryParameters:
    """eta and gamma chosen for the large-distance corollary."""
    eta_max: float
    eta: float
    gamma: float
    distance_factor: float


def select_cor_eta(q: int, delta: float) -> CorollaryParameters:
    """Pick eta by bisection and gamma = min{eta, f(eta) - 1}.

    f(eta) = (1/2 - 2 eta) / (1 + 0.9 log_q(1 - delta)); eta_max solves
    f(eta_max) = 1 and eta is the midpoint of (0, eta_max).

    Raises:
        InfeasibleParameters: no eta in (0, 1/4) has f(eta) > 1
    """
    factor = 1 + 0.9 * _log_q(q, 1 - delta)
    if factor <= 0:
        raise InfeasibleParameters('distance_factor_positive',
                                   f"1 + 0.9 log_q(1 - delta) = {factor:.6g}",
                                   lhs=0.0, rhs=factor)

    def excess(eta):
        return (0.5 - 2 * eta) / factor - 1

    if excess(0.0) <= 0:
        raise InfeasibleParameters('eta_interval_nonempty',
                                   f"f(0) = {excess(0.0) + 1:.6g} <= 1")
    eta_max = float(bisect(excess, 0.0, 0.25, xtol=1e-12))
    eta = eta_max / 2
    gamma = min(eta, excess(eta))
    return CorollaryParameters(eta_max, eta, gamma, factor)


def cor_rate_window(q: int, dual_delta: float, gamma: float) -> tuple[float, float]:
    """((1/2 - 2 gamma) H_q(dual_delta), (1 + gamma) H_q(dual_delta))."""
    entropy = entropy_q(q, dual_delta)
    return (0.5 - 2 * gamma) * entropy, (1 + gamma) * entropy


def plan_cor(q: int, delta: float, epsilon: float, dual_delta: float, n: int,
             rate: float | None = None) -> PlanResult:
    """Corollary for mother codes with delta > 1 - q^(-0.6).

    When rate is omitted the midpoint of cor_rate_window is used.

    Raises:
        InfeasibleParameters: naming the failed precondition
    """
    _check_alphabet(q)
    checks = _Checklist()
    checks.less('delta_above_threshold', 1 - q ** -COR_DISTANCE_EXPONENT, delta)
    checks.less('delta_in_unit_interval', delta, 1.0)
    checks.raise_first_failure()
    params = select_cor_eta(q, delta)
    gamma = params.gamma
    checks.less('dual_delta_positive', 0.0, dual_delta)
    checks.less('dual_below_eps_power', dual_delta, epsilon ** (1 / gamma))
    checks.less('dual_below_constant', dual_delta, COR_DUAL_DISTANCE_LIMIT)
    checks.less('dual_below_alphabet_power', dual_delta, (1 / q) ** (1 / gamma))
    checks.raise_first_failure()
    low, high = cor_rate_window(q, dual_delta, gamma)
    if rate is None:
        rate = (low + high) / 2
    checks.less('rate_positive', 0.0, rate)
    checks.less('rate_below_limit', rate, high)
    checks.raise_first_failure()
    logger.debug("plan_cor: eta=%.6g, gamma=%.6g, R=%.6g", params.eta, gamma, rate)
    return _dual_distance_plan('cor', q, rate, delta, dual_delta, gamma, epsilon, n, checks)
