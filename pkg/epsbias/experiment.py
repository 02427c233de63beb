"""Seeded Monte Carlo harness comparing random shortening with the planners.

A run measures the mother code exactly, asks the planner of the chosen
theorem for a shortening size, then shortens the mother once per trial
with a seed derived from the master seed and the trial index. Trials are
independent, so they can run on a process pool; records are sorted by
trial index before aggregation and the Summary is a pure function of the
configuration.
"""
import json
import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

import pandas as pd

from bounds import (
    johnson_ceps_bound,
    log_union_bound_failure,
    plan_cor,
    plan_thm1,
    plan_thm12,
    plan_thm2,
    plotkin_gap,
    shortened_bias_bound,
)
from config import get_workers
from errors import (
    BadParameters,
    EnumerationCapExceeded,
    InfeasibleParameters,
    InvariantViolation,
    ParseError,
    ZeroCode,
)
from linear_code import (
    FLOAT_TOLERANCE,
    LinearCode,
    bias_of_code,
    distance,
    dual_distance,
    not_biased_mask,
    not_eps_biased_set,
    zero_code,
)
from mother_codes import CodeFamilySpec, build_mother, read_code
from seeding import derive_seed
from transform_code import (
    ExpanderGraph,
    IndexSet,
    build_expander,
    hits_all,
    run_pipeline,
    sample_expander_walk,
    sample_uniform,
    shorten,
)

logger = logging.getLogger(__name__)

THEOREMS = ('thm1', 'thm12', 'thm2', 'cor', 'pipeline', 'custom')
SAMPLERS = ('uniform', 'expander')
EXPORT_FORMATS = ('json', 'csv', 'parquet')
CSV_COLUMNS = ['trial', 'seed', 's_count', 'dim', 'rate', 'bias', 'hit_all', 'succeeded']
WILSON_Z = 1.959963984540054


@dataclass
class ExperimentConfig:
    """Everything a run depends on.

    Attributes:
        mother: family recipe, or the path of a code file
        theorem: planner used to size the shortening (see THEOREMS)
        epsilon: target bias in (0, 1)
        gamma: rate slack for thm1 / thm2
        beta: rate fraction kept by thm12
        delta0_dual: target relative dual distance for thm2 / cor;
            defaults to the measured one
        rate: rate handed to the corollary planner; defaults to the mother's
        trials: number of shortenings per length
        sampler: 'uniform' or 'expander'
        degree: expander degree
        walk_mode: expander walk semantics ('distinct' or 'steps')
        master_seed: 64-bit seed all trial seeds derive from
        enumeration_cap: override of EPSBIAS_MAX_ENUM
        n_sweep: mother lengths to run, each as its own row
        s_count: shortening size for custom and pipeline runs
        p_count: puncturing size for pipeline runs
        mother_attempts: seeds tried for a random mother before giving up
        workers: process count for trials
    """
    mother: CodeFamilySpec | str
    theorem: str = 'thm1'
    epsilon: float = 0.5
    gamma: float | None = None
    beta: float | None = None
    delta0_dual: float | None = None
    rate: float | None = None
    trials: int = 100
    sampler: str = 'uniform'
    degree: int = 16
    walk_mode: str = 'distinct'
    master_seed: int = 0
    enumeration_cap: int | None = None
    n_sweep: list[int] | None = None
    s_count: int | None = None
    p_count: int = 0
    mother_attempts: int = 1
    workers: int | None = None

    def __post_init__(self):
        if self.theorem not in THEOREMS:
            raise BadParameters(f"theorem must be one of {THEOREMS}, got {self.theorem!r}")
        if self.sampler not in SAMPLERS:
            raise BadParameters(f"sampler must be one of {SAMPLERS}, got {self.sampler!r}")
        if self.trials < 1:
            raise BadParameters(f"trials must be >= 1, got {self.trials}")
        if not 0 < self.epsilon < 1:
            raise BadParameters(f"epsilon must lie in (0, 1), got {self.epsilon}")
        if self.mother_attempts < 1:
            raise BadParameters("mother_attempts must be >= 1")
        if self.theorem in ('thm1', 'thm2') and self.gamma is None:
            raise BadParameters(f"{self.theorem} needs gamma")
        if self.theorem == 'thm12' and self.beta is None:
            raise BadParameters("thm12 needs beta")
        if self.theorem in ('custom', 'pipeline') and self.s_count is None:
            raise BadParameters(f"{self.theorem} needs s_count")
        if self.n_sweep is not None:
            if isinstance(self.mother, str):
                raise BadParameters("n_sweep needs a family mother, not a code file")
            self.n_sweep = [int(n) for n in self.n_sweep]

    @classmethod
    def from_dict(cls, data: dict, base_dir=None) -> 'ExperimentConfig':
        """Build from a JSON object, rejecting unknown keys.

        Raises:
            ParseError: unknown key or missing mother
        """
        known = set(cls.__dataclass_fields__)
        unknown = sorted(set(data) - known)
        if unknown:
            raise ParseError(f"unknown config keys: {', '.join(unknown)}")
        if 'mother' not in data:
            raise ParseError("config needs a 'mother'")
        values = dict(data)
        mother = values['mother']
        if isinstance(mother, dict):
            values['mother'] = CodeFamilySpec.from_dict(mother)
        elif isinstance(mother, str):
            if base_dir is not None and not Path(mother).is_absolute():
                mother = str(Path(base_dir) / mother)
            values['mother'] = mother
        else:
            raise ParseError("'mother' must be an object or a path")
        return cls(**values)

    @classmethod
    def from_file(cls, path) -> 'ExperimentConfig':
        path = Path(path)
        try:
            data = json.loads(path.read_text(encoding='utf-8'))
        except json.JSONDecodeError as e:
            raise ParseError(e.msg, path, e.lineno, e.colno) from e
        if not isinstance(data, dict):
            raise ParseError("config must be a JSON object", path, 1, 1)
        return cls.from_dict(data, base_dir=path.parent)

    def to_dict(self) -> dict:
        out = asdict(self)
        if isinstance(self.mother, CodeFamilySpec):
            out['mother'] = self.mother.to_dict()
        return out


@dataclass
class TrialRecord:
    """Outcome of shortening the mother once.

    Attributes:
        trial: trial index
        seed: derived 64-bit seed of the trial
        s_count: |S|
        indices: the shortening set S
        provenance: how S was sampled
        dim: dimension of the shortened (and, in pipeline mode, punctured) code
        length: length of that code
        rate: dim / length
        bias: its bias, None for the zero code
        exact_bias: 'num/den' for binary fields
        distance: its distance, None for the zero code
        hit_all: S hits every word of the mother's C_eps'
        succeeded: bias <= eps and rate >= rate floor
        claims: deterministic sub-claims and whether this trial satisfied each
    """
    trial: int
    seed: int
    s_count: int
    indices: list[int]
    provenance: dict
    dim: int
    length: int
    rate: float
    bias: float | None
    exact_bias: str | None
    distance: int | None
    hit_all: bool
    succeeded: bool
    claims: dict = field(default_factory=dict)


@dataclass
class MotherReport:
    """Exactly measured parameters of a mother code."""
    family: str
    seed: int | None
    q: int
    n: int
    k: int
    rate: float
    distance: int
    relative_distance: float
    dual_distance: int | None
    relative_dual_distance: float | None
    bias: float
    plotkin_gap: float


@dataclass
class RunReport:
    """All trials at one mother length, with the plan and the verdicts.

    Attributes:
        n: mother length
        status: 'ok' or 'infeasible'
        reason: planner message when infeasible
        failed_condition: name of the failed precondition
        mother: measured mother parameters
        preconditions: checklist of (name, lhs, rhs, passed)
        plan: planner output
        trials: per-trial records sorted by trial index
        failures: trials that did not succeed
        empirical_failure: failures / trials
        wilson_low, wilson_high: 95% Wilson interval of the failure rate
        predicted_failure: planner union bound
        claims: deterministic sub-claims and whether each held in every trial
    """
    n: int
    status: str
    reason: str = ""
    failed_condition: str = ""
    mother: MotherReport | None = None
    preconditions: list[dict] = field(default_factory=list)
    plan: dict | None = None
    trials: list[TrialRecord] = field(default_factory=list)
    failures: int = 0
    empirical_failure: float | None = None
    wilson_low: float | None = None
    wilson_high: float | None = None
    predicted_failure: float | None = None
    claims: dict = field(default_factory=dict)


@dataclass
class Summary:
    """Result of an experiment: the config echo and one RunReport per length."""
    config: dict
    runs: list[RunReport]
    runtime_seconds: float | None = field(default=None, compare=False)

    @property
    def empirical_failure(self) -> float | None:
        return self.runs[0].empirical_failure

    @property
    def predicted_failure(self) -> float | None:
        return self.runs[0].predicted_failure

    @property
    def plan(self) -> dict | None:
        return self.runs[0].plan

    @property
    def claims_hold(self) -> bool:
        """True when every run is feasible and every claim held."""
        return all(run.status == 'ok' and all(run.claims.values()) for run in self.runs)

    def to_dict(self, include_runtime: bool = False) -> dict:
        out = asdict(self)
        if not include_runtime:
            out.pop('runtime_seconds')
        return out

    @classmethod
    def from_dict(cls, data: dict) -> 'Summary':
        runs = []
        for run in data['runs']:
            run = dict(run)
            if run.get('mother') is not None:
                run['mother'] = MotherReport(**run['mother'])
            run['trials'] = [TrialRecord(**t) for t in run.get('trials', [])]
            runs.append(RunReport(**run))
        return cls(data['config'], runs, data.get('runtime_seconds'))

    def to_json(self, include_runtime: bool = False) -> str:
        """Deterministic JSON with every finite float written to 17 significant digits."""
        return _to_json(self.to_dict(include_runtime)) + "\n"


def _format_float(value: float) -> str:
    if not math.isfinite(value):
        return json.dumps(value)
    text = '%.17g' % value
    if not any(c in text for c in '.en'):
        text += '.0'
    return text


def _to_json(value, depth: int = 0) -> str:
    """json.dumps(value, indent=2), except for the float format."""
    if isinstance(value, float):
        return _format_float(value)
    pad = "  " * (depth + 1)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [f"{pad}{json.dumps(str(key))}: {_to_json(item, depth + 1)}"
                 for key, item in value.items()]
        return "{\n" + ",\n".join(items) + "\n" + "  " * depth + "}"
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        items = [pad + _to_json(item, depth + 1) for item in value]
        return "[\n" + ",\n".join(items) + "\n" + "  " * depth + "]"
    return json.dumps(value)


def wilson_interval(failures: int, total: int, z: float = WILSON_Z) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion."""
    if total <= 0:
        return 0.0, 1.0
    p_hat = failures / total
    denominator = 1 + z * z / total
    centre = (p_hat + z * z / (2 * total)) / denominator
    half = z * math.sqrt(p_hat * (1 - p_hat) / total + z * z / (4 * total * total)) / denominator
    return max(0.0, centre - half), min(1.0, centre + half)


# ----------------------------------------------------------------------
# Mothers and plans
# ----------------------------------------------------------------------

def measure_mother(code: LinearCode, family: str = 'file', seed: int | None = None,
                   cap: int | None = None) -> MotherReport:
    """Distance, dual distance and bias by enumeration.

    The dual distance is left as None when neither its enumeration nor
    the column search fits the cap.
    """
    d = distance(code, cap)
    try:
        d_dual = dual_distance(code, cap)
    except (EnumerationCapExceeded, ZeroCode) as e:
        logger.warning("Dual distance unavailable for %r: %s", code, e)
        d_dual = None
    bias = bias_of_code(code, cap=cap).epsilon
    return MotherReport(
        family=family, seed=seed, q=code.q, n=code.n, k=code.k, rate=code.rate,
        distance=d, relative_distance=d / code.n, dual_distance=d_dual,
        relative_dual_distance=None if d_dual is None else d_dual / code.n,
        bias=bias, plotkin_gap=plotkin_gap(code.q, code.rate, d / code.n))


@dataclass
class _Plan:
    """What the trials need from a planner."""
    s_count: int
    eps_inner: float
    rate_floor: float
    predicted_failure: float
    details: dict
    preconditions: list[dict]


def _johnson_prediction(report: MotherReport, s_count: int) -> tuple[float, float]:
    """(eps threshold, union-bound failure) from the Johnson count."""
    q = report.q
    delta = min(report.relative_distance, (q - 1) / q)
    threshold, count = johnson_ceps_bound(q, delta, report.n)
    log_failure = log_union_bound_failure(count, report.relative_distance, s_count)
    return threshold, 1.0 if log_failure >= 0 else math.exp(log_failure)


def _plan_from_result(result) -> _Plan:
    return _Plan(result.s_count, result.eps_inner, result.rate_floor,
                 result.predicted_failure, result.to_dict(),
                 [asdict(p) for p in result.preconditions])


def plan_for(config: ExperimentConfig, report: MotherReport) -> _Plan:
    """Run the planner of the configured theorem on the measured mother.

    Raises:
        InfeasibleParameters: the planner rejects the parameters
    """
    q, n, rate, delta = report.q, report.n, report.rate, report.relative_distance
    theorem = config.theorem
    if theorem == 'thm1':
        return _plan_from_result(plan_thm1(q, rate, delta, config.gamma, config.epsilon, n))
    if theorem == 'thm12':
        two_stage = plan_thm12(q, rate, delta, config.beta, config.epsilon, n)
        stage2 = two_stage.stage2
        return _Plan(two_stage.total_s_count, stage2.eps_inner, two_stage.rate_floor,
                     stage2.predicted_failure, two_stage.to_dict(),
                     [asdict(p) for p in two_stage.preconditions + stage2.preconditions])
    if theorem in ('thm2', 'cor'):
        measured = report.relative_dual_distance
        target = config.delta0_dual if config.delta0_dual is not None else measured
        if target is None:
            raise InfeasibleParameters('dual_distance_measured',
                                       "dual distance did not fit the enumeration cap")
        if measured is not None and measured < target:
            raise InfeasibleParameters('dual_distance_at_least_target',
                                       f"measured {measured:.6g} < {target:.6g}",
                                       lhs=measured, rhs=target)
        if theorem == 'thm2':
            result = plan_thm2(q, rate, delta, target, config.gamma, config.epsilon, n)
        else:
            result = plan_cor(q, delta, config.epsilon, target, n,
                              rate=config.rate if config.rate is not None else rate)
        return _plan_from_result(result)

    s_count = config.s_count
    p_count = config.p_count if theorem == 'pipeline' else 0
    if s_count < 0 or s_count + p_count >= n:
        raise InfeasibleParameters('sizes_below_length',
                                   f"s={s_count}, p={p_count}, n={n}",
                                   lhs=s_count + p_count, rhs=n)
    threshold, predicted = _johnson_prediction(report, s_count)
    floor_length = n - s_count - p_count
    rate_floor = max(0, report.k - s_count - p_count) / floor_length
    details = {'theorem': theorem, 's_count': s_count, 'p_count': p_count,
               'eps_inner': threshold, 'predicted_failure': predicted,
               'rate_floor': rate_floor}
    return _Plan(s_count, threshold, rate_floor, predicted, details, [])


def _mother_spec_for(config: ExperimentConfig, n: int | None):
    spec = config.mother
    if n is not None and spec.n != n:
        spec = CodeFamilySpec(spec.family, spec.q, n, spec.k, spec.seed,
                              spec.eval_points, spec.puncture)
    return spec


def prepare_mother(config: ExperimentConfig, n: int | None):
    """Build, measure and plan, resampling random mothers on infeasibility.

    Returns:
        (code, report, plan) where plan is None and the last
        InfeasibleParameters is returned instead when nothing qualified
    """
    cap = config.enumeration_cap
    if isinstance(config.mother, str):
        code = read_code(config.mother)
        report = measure_mother(code, 'file', None, cap)
        try:
            return code, report, plan_for(config, report)
        except InfeasibleParameters as e:
            return code, report, e

    spec = _mother_spec_for(config, n)
    attempts = config.mother_attempts if spec.family == 'random' else 1
    last_error = None
    for attempt in range(attempts):
        current = spec.with_seed(spec.seed + attempt)
        code = build_mother(current)
        report = measure_mother(code, current.family, current.seed, cap)
        try:
            plan = plan_for(config, report)
        except InfeasibleParameters as e:
            last_error = e
            if attempt + 1 < attempts:
                logger.warning("Mother seed %d rejected (%s); resampling",
                               current.seed, e.condition)
            continue
        return code, report, plan
    return code, report, last_error


# ----------------------------------------------------------------------
# Trials
# ----------------------------------------------------------------------

@dataclass
class TrialTask:
    """Picklable description of one trial for the process pool."""
    trial: int
    seed: int
    code: LinearCode
    theorem: str
    epsilon: float
    s_count: int
    p_count: int
    eps_inner: float
    rate_floor: float
    mother_distance: int
    ceps_words: list
    sampler: str
    degree: int
    walk_mode: str
    graph: ExpanderGraph | None
    cap: int | None


def _sample(task: TrialTask) -> IndexSet:
    n = task.code.n
    if task.sampler == 'expander' and task.s_count > 0:
        return sample_expander_walk(n, task.s_count, task.degree, task.seed,
                                    graph=task.graph, mode=task.walk_mode)
    return sample_uniform(n, task.s_count, task.seed)


def _within_epsilon(report, length: int, epsilon: float, code_field) -> bool:
    return not bool(not_biased_mask(report.max_char_sum, length, epsilon, code_field))


def run_trial(task: TrialTask) -> TrialRecord:
    """Shorten the mother once and record the deterministic claims it observed.

    The claims are dimension_floor (k' >= k - |S|, minus |P| in pipeline
    mode), distance_non_decrease (d' >= d, shortening only) and bias_chain
    (a set hitting all of C_eps' leaves bias at most (eps' n + s)/(n - s)).
    A violated claim is logged and recorded, never raised, so the run
    carries on and the summary can report it.
    """
    code = task.code
    n, k = code.n, code.k
    positions = _sample(task)
    s_count = positions.size
    if task.theorem == 'pipeline':
        try:
            final = run_pipeline(code, s_count, task.p_count, task.seed,
                                 shortening=positions).code
        except ZeroCode:
            final = zero_code(code.field, n - s_count - task.p_count)
        dim_floor = k - s_count - task.p_count
    else:
        final = shorten(code, positions)
        dim_floor = k - s_count
    claims = {'dimension_floor': final.k >= dim_floor}

    bias = exact = d = None
    report = None
    if final.k >= 1:
        d = distance(final, task.cap)
        report = bias_of_code(final, cap=task.cap)
        bias = report.epsilon
        if code.field.p == 2:
            exact = str(report.exact_epsilon(final.n))
    hit = hits_all(positions, task.ceps_words)
    if task.theorem != 'pipeline':
        claims['distance_non_decrease'] = d is None or d >= task.mother_distance
        chain_held = True
        if hit and bias is not None:
            chain_held = bias <= shortened_bias_bound(task.eps_inner, n, s_count) + FLOAT_TOLERANCE
        claims['bias_chain'] = chain_held
    for name, held in claims.items():
        if not held:
            logger.error("Trial %d (seed %d) violated %s: dim=%d, distance=%s, bias=%s",
                         task.trial, task.seed, name, final.k, d, bias)
    rate = final.k / final.n
    succeeded = (report is not None
                 and _within_epsilon(report, final.n, task.epsilon, code.field)
                 and rate >= task.rate_floor - FLOAT_TOLERANCE)
    return TrialRecord(
        trial=task.trial, seed=task.seed, s_count=s_count, indices=list(positions.indices),
        provenance=positions.provenance.to_dict(), dim=final.k, length=final.n, rate=rate,
        bias=bias, exact_bias=exact, distance=d, hit_all=hit, succeeded=succeeded,
        claims=claims)


def _execute_tasks(tasks: list[TrialTask], workers: int) -> list[TrialRecord]:
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            records = list(executor.map(run_trial, tasks,
                                        chunksize=max(1, len(tasks) // (4 * workers))))
    else:
        records = [run_trial(task) for task in tasks]
    return sorted(records, key=lambda record: record.trial)


def _claims(plan: _Plan, records: list[TrialRecord]) -> dict:
    """Each sub-claim and whether it held in every trial."""
    claims = {'rate_floor': all(r.rate >= plan.rate_floor - FLOAT_TOLERANCE for r in records)}
    for record in records:
        for name, held in record.claims.items():
            claims[name] = claims.get(name, True) and held
    return claims


def run_length(config: ExperimentConfig, n: int | None, workers: int) -> RunReport:
    """One row of the experiment: a mother length and its trials."""
    code, report, plan = prepare_mother(config, n)
    if isinstance(plan, InfeasibleParameters):
        logger.warning("Length %d infeasible: %s", code.n, plan)
        checklist = [asdict(p) for p in plan.preconditions] or [
            {'name': plan.condition, 'lhs': plan.lhs, 'rhs': plan.rhs, 'passed': False}]
        return RunReport(n=code.n, status='infeasible', reason=str(plan),
                         failed_condition=plan.condition, mother=report,
                         preconditions=checklist)

    ceps_words = not_eps_biased_set(code, plan.eps_inner, config.enumeration_cap)
    if not ceps_words:
        logger.warning("C_eps' of the mother is empty at eps'=%.6g", plan.eps_inner)
    graph = None
    if config.sampler == 'expander' and plan.s_count > 0:
        graph = build_expander(code.n, config.degree, config.master_seed)
    tasks = [
        TrialTask(trial=i, seed=derive_seed(config.master_seed, i), code=code,
                  theorem=config.theorem, epsilon=config.epsilon, s_count=plan.s_count,
                  p_count=config.p_count, eps_inner=plan.eps_inner,
                  rate_floor=plan.rate_floor, mother_distance=report.distance,
                  ceps_words=ceps_words, sampler=config.sampler, degree=config.degree,
                  walk_mode=config.walk_mode, graph=graph, cap=config.enumeration_cap)
        for i in range(config.trials)
    ]
    logger.info("Running %d trials on [%d, %d] with |S| = %d",
                len(tasks), code.n, code.k, plan.s_count)
    records = _execute_tasks(tasks, workers)
    failures = sum(1 for r in records if not r.succeeded)
    low, high = wilson_interval(failures, len(records))
    details = dict(plan.details)
    if graph is not None:
        details['lambda2'] = graph.lambda2
    return RunReport(
        n=code.n, status='ok', mother=report, preconditions=plan.preconditions,
        plan=details, trials=records, failures=failures,
        empirical_failure=failures / len(records), wilson_low=low, wilson_high=high,
        predicted_failure=plan.predicted_failure, claims=_claims(plan, records))


def _execute(config: ExperimentConfig, strict: bool) -> Summary:
    started = time.perf_counter()
    workers = get_workers(config.workers)
    logger.info("=" * 60)
    logger.info("Experiment %s, %d trials, master seed %d",
                config.theorem, config.trials, config.master_seed)
    lengths = config.n_sweep or [None]
    runs = []
    for n in lengths:
        run = run_length(config, n, workers)
        if strict and run.status != 'ok':
            raise InfeasibleParameters(run.failed_condition, run.reason)
        if strict and not all(run.claims.values()):
            failed = sorted(name for name, held in run.claims.items() if not held)
            raise InvariantViolation(f"n={run.n}: claims failed: {', '.join(failed)}")
        runs.append(run)
        if run.status == 'ok':
            logger.info("n=%d: empirical failure %.4f (Wilson [%.4f, %.4f]), predicted %.3g",
                        run.n, run.empirical_failure, run.wilson_low, run.wilson_high,
                        run.predicted_failure)
    elapsed = time.perf_counter() - started
    logger.info("Experiment finished in %.2f s", elapsed)
    logger.info("=" * 60)
    return Summary(config.to_dict(), runs, elapsed)


def run_trials(config: ExperimentConfig) -> Summary:
    """Run every length of the experiment.

    Raises:
        InfeasibleParameters: a planner rejects a measured mother
        InvariantViolation: a deterministic sub-claim failed in some trial
        EnumerationCapExceeded: a code is too large to measure
    """
    return _execute(config, strict=True)


def verify_theorem(config: ExperimentConfig) -> Summary:
    """Like run_trials, but infeasible lengths and failed claims are reported, not raised."""
    summary = _execute(config, strict=False)
    for run in summary.runs:
        if run.status != 'ok':
            failed = [p['name'] for p in run.preconditions if not p['passed']]
            logger.info("n=%d: precondition failed: %s", run.n, ", ".join(failed) or run.reason)
        else:
            logger.info("n=%d: claims %s", run.n, run.claims)
    return summary


# ----------------------------------------------------------------------
# Export
# ----------------------------------------------------------------------

def trials_frame(run: RunReport) -> pd.DataFrame:
    """Trial records of one run in CSV column order."""
    frame = pd.DataFrame(
        [{'trial': r.trial, 'seed': r.seed, 's_count': r.s_count, 'dim': r.dim,
          'rate': r.rate, 'bias': r.bias, 'hit_all': r.hit_all, 'succeeded': r.succeeded}
         for r in run.trials],
        columns=CSV_COLUMNS)
    frame['seed'] = frame['seed'].astype('uint64')
    return frame


def _run_path(path: Path, run: RunReport, many: bool) -> Path:
    if not many:
        return path
    return path.with_name(f"{path.stem}_n{run.n}{path.suffix}")


def export(summary: Summary, fmt: str, path, include_runtime: bool = False) -> list[Path]:
    """Write a Summary as json, csv or parquet.

    Tabular formats hold trial records; a sweep writes one file per
    length, suffixed with _n<length>.

    Returns:
        paths written

    Raises:
        BadParameters: unknown format
        OSError: the file cannot be written
    """
    if fmt not in EXPORT_FORMATS:
        raise BadParameters(f"format must be one of {EXPORT_FORMATS}, got {fmt!r}")
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    if fmt == 'json':
        path.write_text(summary.to_json(include_runtime), encoding='utf-8')
        written = [path]
    else:
        many = len(summary.runs) > 1
        written = []
        for run in summary.runs:
            target = _run_path(path, run, many)
            frame = trials_frame(run)
            if fmt == 'csv':
                frame.to_csv(target, index=False, float_format='%.17g')
            else:
                frame.to_parquet(target, index=False, engine='pyarrow')
            written.append(target)
    for target in written:
        logger.info("Wrote %s", target)
    return written


def load_summary(path) -> Summary:
    """Read a Summary written by export(..., 'json', ...)."""
    return Summary.from_dict(json.loads(Path(path).read_text(encoding='utf-8')))
