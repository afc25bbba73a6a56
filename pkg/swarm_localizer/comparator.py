import json
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import replace
from typing import Callable, Dict, Iterable, List, Optional, Sequence

import structlog

from .config import RunConfig, ScenarioKind
from .exceptions import UndefinedMetricError
from .metrics import error_reduction_rate, mean_error
from .trial import TrialRecord, run_trial


class ScenarioComparator:
    """
    Сравнение сценариев на наборе сидов.

    Запускает все пары (сценарий, сид) с общей базовой конфигурацией и
    собирает сводную статистику по пиковой, итоговой и средней ошибке.
    """

    def __init__(self, base_config: RunConfig,
                 scenarios: Sequence[ScenarioKind] = tuple(ScenarioKind),
                 seeds: Iterable[int] = range(1, 6),
                 runner: Optional[Callable[[RunConfig], TrialRecord]] = None):
        """
        Инициализация сравнения.

        Args:
            base_config: Базовая конфигурация; сценарий и сид подменяются
            scenarios: Сценарии для сравнения
            seeds: Сиды испытаний
            runner: Функция запуска одного испытания (по умолчанию run_trial)
        """
        self.base_config = base_config
        self.scenarios = [ScenarioKind(s) for s in scenarios]
        self.seeds = list(seeds)
        self.runner = runner or run_trial
        self.logger = structlog.get_logger(__name__)

    def _configs(self) -> List[RunConfig]:
        return [
            replace(self.base_config, scenario=scenario, seed=seed)
            for seed in self.seeds
            for scenario in self.scenarios
        ]

    def compare(self, parallel: bool = True, max_workers: int = 4) -> List[TrialRecord]:
        """
        Запускает все испытания.

        Упавшее испытание логируется и пропускается; остальные продолжаются.

        Args:
            parallel: Запускать ли испытания в пуле потоков
            max_workers: Размер пула

        Returns:
            Записи успешных испытаний в порядке (сид, сценарий)
        """
        configs = self._configs()
        results: Dict[int, TrialRecord] = {}

        if parallel and len(configs) > 1:
            with ThreadPoolExecutor(max_workers=min(len(configs), max_workers)) as executor:
                future_to_index = {
                    executor.submit(self.runner, cfg): index for index, cfg in enumerate(configs)
                }

                for future in as_completed(future_to_index):
                    index = future_to_index[future]
                    cfg = configs[index]
                    try:
                        results[index] = future.result()
                        self.logger.info("Испытание выполнено", scenario=cfg.scenario.value, seed=cfg.seed)
                    except Exception as e:
                        self.logger.error(
                            "Ошибка испытания", scenario=cfg.scenario.value, seed=cfg.seed, error=str(e)
                        )
                        continue
        else:
            for index, cfg in enumerate(configs):
                try:
                    results[index] = self.runner(cfg)
                    self.logger.info("Испытание выполнено", scenario=cfg.scenario.value, seed=cfg.seed)
                except Exception as e:
                    self.logger.error(
                        "Ошибка испытания", scenario=cfg.scenario.value, seed=cfg.seed, error=str(e)
                    )
                    continue

        return [results[index] for index in sorted(results)]

    def get_summary_stats(self, records: List[TrialRecord]) -> Dict:
        """
        Сводная статистика по сценариям.

        Returns:
            Словарь: число испытаний и средние ошибки по каждому сценарию,
            а также η по сидам
        """
        stats = {"total_trials": len(records), "scenario_breakdown": {}}

        for scenario in self.scenarios:
            subset = self.filter_by_scenario(records, scenario)
            if not subset:
                continue
            stats["scenario_breakdown"][scenario.value] = {
                "trials": len(subset),
                "mean_peak_error": round(mean_error([r.peak_error for r in subset]), 6),
                "mean_final_error": round(mean_error([r.final_error for r in subset]), 6),
                "mean_error": round(mean_error([float(r.errors.mean()) for r in subset]), 6),
                "full_updates": sum(r.full_updates for r in subset),
            }

        stats["eta_per_seed"] = {str(seed): round(eta, 4) for seed, eta in self.eta_per_seed(records).items()}
        return stats

    def filter_by_scenario(self, records: List[TrialRecord],
                           scenario: ScenarioKind) -> List[TrialRecord]:
        """Записи указанного сценария."""
        scenario = ScenarioKind(scenario)
        return [record for record in records if record.scenario is scenario]

    def eta_per_seed(self, records: List[TrialRecord],
                     candidate: ScenarioKind = ScenarioKind.GREEDY_SWARM,
                     reference: ScenarioKind = ScenarioKind.BASELINE) -> Dict[int, float]:
        """
        Снижение пиковой ошибки candidate относительно reference по сидам.

        Сиды без пары испытаний или с нулевой базовой ошибкой пропускаются.
        """
        peaks: Dict[ScenarioKind, Dict[int, float]] = {candidate: {}, reference: {}}
        for record in records:
            if record.scenario in peaks:
                peaks[record.scenario][record.seed] = record.peak_error

        rates = {}
        for seed in sorted(peaks[candidate]):
            if seed not in peaks[reference]:
                continue
            try:
                rates[seed] = error_reduction_rate(peaks[candidate][seed], peaks[reference][seed])
            except UndefinedMetricError as e:
                self.logger.warning("η не определена", seed=seed, error=str(e))
        return rates

    def to_json(self, stats: Optional[Dict], pretty: bool = True) -> str:
        """
        Преобразует сводку в JSON.

        Args:
            stats: Сводная статистика
            pretty: Форматировать ли JSON для читаемости

        Returns:
            JSON строка
        """
        if pretty:
            return json.dumps(stats, indent=2, ensure_ascii=False)
        return json.dumps(stats, ensure_ascii=False)
