"""CSV tables with round-trip safe floats"""

import io
from pathlib import Path
from typing import Dict, Iterable, Optional, Sequence, Union

import pandas as pd

FLOAT_FORMAT = "%.17g"


def make_frame(
    records: Iterable[Dict[str, object]], columns: Sequence[str]
) -> pd.DataFrame:
    return pd.DataFrame(list(records), columns=list(columns))


def render_csv(frame: pd.DataFrame) -> str:
    """Header row, '.' decimals, 17 significant digits, no index"""
    buffer = io.StringIO()
    frame.to_csv(buffer, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    return buffer.getvalue()


def write_csv(
    frame: pd.DataFrame, file_path: Optional[Union[str, Path]] = None
) -> str:
    """Render the frame and write it to `file_path` when one is given"""
    text = render_csv(frame)
    if file_path is not None:
        path = Path(file_path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="") as f:
            f.write(text)
    return text
