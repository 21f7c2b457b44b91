#!/usr/bin/env python3
"""
AlgInt Certify - Workflow Manager Module
Runs every instance file of a directory and writes a certificate next to each one
"""

import os
import time
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Callable, Dict, List, Optional

from modules.certificate import Certificate
from modules.codec import instance_metadata, write_certificate
from modules.errors import AlgIntError, InvalidArgument

logger = logging.getLogger(__name__)

CERTIFICATE_SUFFIX = ".cert.json"

Runner = Callable[[str], Certificate]


def certificate_path(instance_path: str) -> str:
    base, _ = os.path.splitext(instance_path)
    return base + CERTIFICATE_SUFFIX


def list_instances(directory: str) -> List[str]:
    """Instance files of a directory in file-name order, skipping certificates"""
    if not os.path.isdir(directory):
        raise InvalidArgument(f"Not a directory: {directory}")
    names = sorted(
        name for name in os.listdir(directory)
        if name.endswith(".json") and not name.endswith(CERTIFICATE_SUFFIX)
    )
    return [os.path.join(directory, name) for name in names]


class WorkflowManager:
    """
    Batch workflow manager
    Certifies the instances of a directory on a thread pool and keeps the
    processed and failed lists for the summary
    """

    def __init__(self, config, runner: Runner):
        """
        Initialize Workflow Manager

        Args:
            config: Configuration object
            runner: Callable turning an instance path into a Certificate
        """
        self.config = config
        self.runner = runner
        self.running = False
        self.processed_files: List[Dict[str, Any]] = []
        self.failed_files: List[Dict[str, Any]] = []
        self.max_parallel_tasks = max(1, int(config.max_parallel_tasks))

    def process_file(self, path: str) -> Dict[str, Any]:
        """
        Certify a single instance file and write its certificate

        Args:
            path: Instance file path

        Returns:
            Result record with status, verdict and certificate path
        """
        result: Dict[str, Any] = {
            "filename": os.path.basename(path),
            "status": "processing",
            "start_time": time.time(),
            "end_time": None,
            "certificate": None,
            "exit_code": None,
            "error": None,
        }
        try:
            certificate = self.runner(path)
            out_path = certificate_path(path)
            write_certificate(certificate, out_path)
            result.update(instance_metadata(path, certificate))
            result["certificate"] = out_path
            result["exit_code"] = certificate.exit_code
            result["status"] = "completed"
            logger.info(f"Certified {result['filename']}: {certificate.verdict.value}")
        except AlgIntError as e:
            logger.error(f"Failed to certify {result['filename']}: {e.describe()}")
            result["status"] = "failed"
            result["exit_code"] = 1
            result["error"] = e.describe()
        finally:
            result["end_time"] = time.time()
        return result

    def run_directory(self, directory: str) -> List[Dict[str, Any]]:
        """
        Certify every instance of a directory

        Args:
            directory: Directory holding *.json instances

        Returns:
            Result records in file-name order
        """
        paths = list_instances(directory)
        logger.info(f"Batch of {len(paths)} instances in {directory} with {self.max_parallel_tasks} workers")
        self.running = True
        try:
            with ThreadPoolExecutor(max_workers=self.max_parallel_tasks) as executor:
                results = list(executor.map(self.process_file, paths))
        finally:
            self.running = False
        for result in results:
            if result["status"] == "completed":
                self.processed_files.append(result)
            else:
                self.failed_files.append(result)
        return results

    @staticmethod
    def batch_exit_code(results: List[Dict[str, Any]]) -> int:
        # Errors dominate Inconclusive, which dominates success
        codes = [r["exit_code"] for r in results]
        if 1 in codes:
            return 1
        return 2 if 2 in codes else 0

    def get_workflow_status(self) -> Dict[str, Any]:
        """
        Tally of the certificates produced so far

        Returns:
            Counts of certified and failed instances, verdict counts and the exit code
        """
        verdicts: Dict[str, int] = {}
        for r in self.processed_files:
            verdicts[r["verdict"]] = verdicts.get(r["verdict"], 0) + 1
        return {
            "is_running": self.running,
            "certified": len(self.processed_files),
            "failed": len(self.failed_files),
            "verdicts": dict(sorted(verdicts.items())),
            "exit_code": self.batch_exit_code(self.processed_files + self.failed_files),
            "max_parallel_tasks": self.max_parallel_tasks,
        }

    def set_batch_config(self, max_parallel_tasks: int) -> Dict[str, Any]:
        """
        Set batch processing configuration

        Args:
            max_parallel_tasks: Worker threads used by run_directory

        Returns:
            Dictionary containing the updated configuration
        """
        if not isinstance(max_parallel_tasks, int) or isinstance(max_parallel_tasks, bool) or max_parallel_tasks < 1:
            logger.error(f"Invalid batch configuration: {max_parallel_tasks!r}")
            return {"success": False, "message": "max_parallel_tasks must be a positive integer"}
        self.max_parallel_tasks = max_parallel_tasks
        logger.info(f"Batch configuration updated: max_parallel_tasks = {max_parallel_tasks}")
        return {"success": True, "max_parallel_tasks": self.max_parallel_tasks}

    def summary_rows(self, results: Optional[List[Dict[str, Any]]] = None) -> List[List[str]]:
        rows = []
        for r in results if results is not None else self.processed_files + self.failed_files:
            rows.append([
                r["filename"],
                r.get("kind", "-"),
                r.get("verdict", "error") if r["status"] == "completed" else "error",
                str(r.get("witnesses", 0)),
                r["error"] or "",
            ])
        return rows
