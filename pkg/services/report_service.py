import json
import os
from typing import Any, Dict, List, Optional

import click
from loguru import logger
from pydantic import BaseModel

from config import TOOL_VERSION
from handlers import HandlerResult
from models import RunManifest, to_json

EXIT_CODES = {"pass": 0, "fail": 1, "error": 2}


def payload_json(payload: Any) -> str:
    """JSON полезной нагрузки с отсортированными ключами"""
    if isinstance(payload, BaseModel):
        return to_json(payload)
    if isinstance(payload, list) and all(isinstance(item, BaseModel) for item in payload):
        payload = [item.model_dump(mode="json") for item in payload]
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False)


class ReportService:
    """Сервис вывода отчетов: JSON в stdout или файл, манифест запуска, DOT"""

    def __init__(self, out: Optional[str] = None, dot: Optional[str] = None):
        """
        Инициализация сервиса отчетов

        Args:
            out (Optional[str]): Путь для JSON-отчета (None - stdout)
            dot (Optional[str]): Путь для DOT-файла
        """
        self.out = out
        self.dot = dot
        logger.debug(f"Инициализирован ReportService: out={out}, dot={dot}")

    @staticmethod
    def _write(path: str, text: str) -> None:
        directory = os.path.dirname(path)
        if directory:
            os.makedirs(directory, exist_ok=True)
        with open(path, "w", encoding="utf-8") as f:
            f.write(text)
            if not text.endswith("\n"):
                f.write("\n")

    def manifest_path(self) -> Optional[str]:
        return f"{self.out}.manifest.json" if self.out else None

    def emit(self, command: str, parameters: Dict[str, Any], result: HandlerResult, elapsed: float) -> int:
        """
        Запись полезной нагрузки, DOT и манифеста; возвращает код выхода

        Args:
            command (str): Имя команды, например "lattice exotic"
            parameters (Dict[str, Any]): Параметры запуска
            result (HandlerResult): Результат обработчика
            elapsed (float): Время выполнения в секундах
        """
        text = payload_json(result.payload)
        outputs: List[str] = []

        if self.out:
            self._write(self.out, text)
            outputs.append(self.out)
        else:
            click.echo(text)

        if self.dot:
            if result.dot is None:
                logger.warning(f"Команда {command} не строит DOT, файл {self.dot} не записан")
            else:
                self._write(self.dot, result.dot)
                outputs.append(self.dot)

        if self.out:
            manifest = RunManifest(
                command=command,
                parameters=parameters,
                tool_version=TOOL_VERSION,
                elapsed_seconds=round(elapsed, 3),
                outputs=outputs,
                status=result.status,
                witnesses=result.witnesses if result.status != "pass" else {},
            )
            self._write(self.manifest_path(), to_json(manifest))

        code = EXIT_CODES[result.status]
        logger.info(f"Команда {command}: {result.status} (код {code}, {elapsed:.2f} с)")
        return code
