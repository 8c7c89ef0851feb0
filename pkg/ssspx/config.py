import os
from pathlib import Path

import yaml

_cfg_path = Path(__file__).resolve().parents[1] / 'config.yaml'
if not _cfg_path.exists():
    _cfg_path = Path('config.yaml')

if _cfg_path.exists():
    with open(_cfg_path, 'r', encoding='utf-8') as f:
        settings = yaml.safe_load(f) or {}
else:
    settings = {}

settings.setdefault('app', {'name': 'ssspx'})
settings.setdefault('solver', {})
settings.setdefault('bench', {})
settings.setdefault('logging', {'level': 'INFO'})

# environment overrides
if os.environ.get('SSSPX_DEBUG_CHECKS') == '1':
    settings['solver']['debug_checks'] = True
if os.environ.get('SSSPX_LOG_LEVEL'):
    settings['logging']['level'] = os.environ['SSSPX_LOG_LEVEL']


def debug_checks_from_env() -> bool:
    """SSSPX_DEBUG_CHECKS=1 is read at call time so the CLI honours late exports."""
    return os.environ.get('SSSPX_DEBUG_CHECKS') == '1'
