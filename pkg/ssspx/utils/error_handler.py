"""
Collection of invariant violations found by debug checks
"""
import logging
from datetime import datetime
from typing import Any, Dict, List, Optional

logger = logging.getLogger(__name__)


class InvariantReport:
    """Collects violations and warnings raised while a solve runs with debug checks."""

    def __init__(self):
        self.violations: List[Dict[str, Any]] = []
        self.warnings: List[Dict[str, Any]] = []

    def log_violation(self, stage: str, message: str, context: Optional[Dict] = None):
        record = {
            "timestamp": datetime.now().isoformat(),
            "stage": stage,
            "message": message,
            "context": context or {},
        }
        self.violations.append(record)
        logger.error("[%s] %s %s", stage, message, context or "")

    def log_warning(self, stage: str, message: str, context: Optional[Dict] = None):
        record = {
            "timestamp": datetime.now().isoformat(),
            "stage": stage,
            "message": message,
            "context": context or {},
        }
        self.warnings.append(record)
        logger.warning("[%s] %s", stage, message)

    @property
    def ok(self) -> bool:
        return not self.violations

    def stages(self) -> List[str]:
        return sorted({v["stage"] for v in self.violations})

    def summary(self) -> Dict[str, Any]:
        return {
            "ok": self.ok,
            "violations": len(self.violations),
            "warnings": len(self.warnings),
            "stages": self.stages(),
        }

    def clear(self):
        self.violations.clear()
        self.warnings.clear()
