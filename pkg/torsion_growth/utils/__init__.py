"""
Logging for job pipelines.
"""
from .logger import PipelineLogger

__all__ = [
    'PipelineLogger',
]
