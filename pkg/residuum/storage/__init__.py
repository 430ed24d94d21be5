from .database import ReportStore

__all__ = ["ReportStore"]
