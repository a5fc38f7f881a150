"""
Utilidades de archivos de entrada y salida de la CLI.
La salida se escribe una sola vez y de forma atómica (archivo temporal + os.replace).
"""
from pathlib import Path
from typing import Optional
import os
import sys
import tempfile

from core.errors import FormatError
from core.logging import logger


class FileManager:
    """Manager para lectura de entradas y escritura atómica de resultados"""

    def read_text(self, file_path: str) -> str:
        """
        Lee un archivo de entrada en UTF-8

        Args:
            file_path: Path del archivo

        Returns:
            str: Contenido del archivo

        Raises:
            FormatError: si el archivo no existe o no se puede leer
        """
        path = Path(file_path)
        if not path.is_file():
            raise FormatError(f"Archivo de entrada no encontrado: {file_path}")
        try:
            content = path.read_text(encoding="utf-8")
            logger.debug(f"Archivo leído: {file_path} ({len(content)} caracteres)")
            return content
        except (OSError, UnicodeDecodeError) as e:
            raise FormatError(f"No se pudo leer {file_path}: {e}")

    def write_atomic(self, content: str, file_path: str) -> str:
        """
        Escribe el contenido en un temporal del mismo directorio y lo renombra

        Args:
            content: Texto completo a escribir
            file_path: Destino final

        Returns:
            str: Path absoluto del archivo escrito
        """
        target = Path(file_path).resolve()
        target.parent.mkdir(parents=True, exist_ok=True)
        fd, temp_path = tempfile.mkstemp(dir=str(target.parent), prefix=f".{target.name}.", suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as f:
                f.write(content)
            os.replace(temp_path, target)
            logger.info(f"Resultado guardado: {target}")
            return str(target)
        except Exception as e:
            logger.error(f"Error guardando resultado en {target}: {e}")
            if os.path.exists(temp_path):
                os.unlink(temp_path)
            raise

    def emit(self, content: str, file_path: Optional[str] = None) -> None:
        """Escribe en file_path si se indica; si no, en la salida estándar"""
        if file_path:
            self.write_atomic(content, file_path)
        else:
            sys.stdout.write(content)
            sys.stdout.flush()


# Instancia global
file_manager = FileManager()
