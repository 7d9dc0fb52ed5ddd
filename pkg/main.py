#!/usr/bin/env python3
"""
Основной файл для запуска командной строки
"""

from cli import cli


def main():
    """Точка входа в приложение"""
    cli(prog_name="buildings")


if __name__ == "__main__":
    main()
