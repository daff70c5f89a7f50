"""Machine-readable reports.

Reports are JSON-ready dictionaries with a schema identifier and version. Rules are written with canonically renamed
variables and substitutions are written with sorted keys, so a report is byte-identical across runs for the same
input.
"""

__all__ = [
    'make_report',
    'dumps',
    'format_rules',
    'rules_to_list',
    'substitution_to_dict',
    'saturation_to_dict',
    'contracting_to_dict',
    'outcome_to_dict',
]

from collections.abc import Iterable
import json
from typing import Any, Optional

from . import const

from .constraints import SolveOutcome
from .contracting import ContractingReport
from .deduction import DeductionRule
from .rewrite import RewriteRule
from .saturate import SaturationResult
from .term import Substitution


def make_report(
        command: str,
        status: str,
        theory: Optional[str] = None,
        **payload: Any,
) -> dict[str, Any]:
    """Build a report.

    :param command: Subcommand name.
    :param status: Verdict ("sat", "fail", "unknown", "val", "inval", "true", "false", "diverged", "saturated", "ok").
    :param theory: Theory name.
    :param payload: Command-specific fields.

    :returns: Report dictionary.
    """
    report = {
        'schema': const.REPORT_SCHEMA,
        'schema_version': const.REPORT_SCHEMA_VERSION,
        'command': command,
        'status': status,
        'theory': theory,
    }

    for key in payload:
        if key in report:
            raise ValueError(f'Report payload overrides a reserved field: {key}')

    report.update(payload)

    return report


def dumps(report: dict[str, Any]) -> str:
    """Serialize a report with sorted keys."""
    return json.dumps(report, sort_keys=True, indent=2)


def _rule_str(rule: RewriteRule | DeductionRule) -> str:
    return str(rule.canonical()) if isinstance(rule, DeductionRule) else str(rule)


def rules_to_list(rules: Iterable[RewriteRule | DeductionRule]) -> list[str]:
    """Get rules as strings in the theory text syntax."""
    return [_rule_str(rule) for rule in rules]


def format_rules(rules: Iterable[RewriteRule | DeductionRule], indent: str = '') -> str:
    """Get rules one per line in the theory text syntax."""
    return '\n'.join(indent + rule_str for rule_str in rules_to_list(rules))


def substitution_to_dict(sigma: Optional[Substitution]) -> Optional[dict[str, str]]:
    """Get a substitution as a variable name to term string dictionary."""
    if sigma is None:
        return None

    return {var.name: str(t) for var, t in sorted(sigma.items(), key=lambda item: item[0].name)}


def saturation_to_dict(result: SaturationResult) -> dict[str, Any]:
    """Get the fields of a saturation report."""
    return {
        'diverged': result.diverged,
        'rounds': result.rounds,
        'rules': [
            {
                'rule': _rule_str(entry.rule),
                'origin': entry.origin.value,
                'kind': result.system.kind(entry.rule).value,
                'generation': entry.generation,
            }
            for entry in result.provenance
        ],
        'added': len(result.added_rules()),
        'offending': rules_to_list(result.offending),
        'stats': dict(result.stats),
    }


def contracting_to_dict(report: ContractingReport) -> dict[str, Any]:
    """Get the fields of a contracting report."""
    return {
        'contracting': report.contracting,
        'rules': [
            {
                'rule': _rule_str(entry.rule),
                'kind': entry.kind.value,
                'measure': entry.measure.to_json(),
                'contracting': entry.contracting,
            }
            for entry in report.entries
        ],
        'failing': rules_to_list(entry.rule for entry in report.failing()),
    }


def outcome_to_dict(outcome: SolveOutcome) -> dict[str, Any]:
    """Get the fields of a solver report."""
    return {
        'witness': substitution_to_dict(outcome.witness),
        'trace': list(outcome.trace),
        'stats': dict(outcome.stats),
        'diagnostics': {key: outcome.diagnostics[key] for key in sorted(outcome.diagnostics)},
    }
