"""
Command line, job dispatch and file formats.
"""
from .cli import main
from .job_manager import JobManager, JobSpec, ResultRecord

__all__ = [
    'JobManager',
    'JobSpec',
    'ResultRecord',
    'main',
]
