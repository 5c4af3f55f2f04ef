"""
Helper utility functions
"""
import functools
import json
from datetime import datetime, timezone

import click
from flask import current_app

from utils.constants import VOLATILE_FIELDS
from utils.errors import PlanarError


def stamp_report(report: dict) -> dict:
    """Attach the generation time; it is excluded from report comparisons."""
    return {**report, 'generated_at': datetime.now(timezone.utc).isoformat(timespec='seconds')}


def strip_volatile(value):
    """Copy of a JSON-like value without timing fields."""
    if isinstance(value, dict):
        return {k: strip_volatile(v) for k, v in value.items() if k not in VOLATILE_FIELDS}
    if isinstance(value, list):
        return [strip_volatile(v) for v in value]
    return value


def dump_json(payload, output_path=None):
    """Write JSON to --output or stdout; keys sorted so equal runs are byte-identical."""
    text = json.dumps(payload, sort_keys=True, indent=2)
    if output_path:
        with open(output_path, 'w', encoding='utf-8') as handle:
            handle.write(text + '\n')
    else:
        click.echo(text)


def echo_table(text: str):
    """Human-readable output goes to stderr."""
    click.echo(text, err=True)


def planar_command(fn):
    """Report PlanarError on stderr and exit with status 2."""
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except PlanarError as exc:
            current_app.logger.error(f'{fn.__name__.replace("_", "-")} failed: {exc}')
            payload = {'error': type(exc).__name__, 'message': str(exc)}
            if getattr(exc, 'witness', None):
                payload['witness'] = [list(edge) for edge in exc.witness]
            click.echo(json.dumps(payload, sort_keys=True), err=True)
            raise SystemExit(2)
    return wrapper
