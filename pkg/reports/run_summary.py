"""
Run Summary Generation

Writes summary.txt at the end of every command: the command, its config,
and the headline numbers of the run.
"""

from pathlib import Path
from datetime import datetime


def _format_value(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.6g}"
    return str(value)


def write_run_summary(logger, out_dir, command, results, config_source=None, lines=()):
    """Write <out_dir>/summary.txt; `lines` are printed verbatim after the results block"""

    summary_path = Path(out_dir) / "summary.txt"

    try:
        with open(summary_path, 'w', encoding='utf-8') as f:
            f.write("="*80 + "\n")
            f.write(f"VARIPRO - {command.upper()} RUN SUMMARY\n")
            f.write("="*80 + "\n")
            f.write(f"Run Date: {datetime.now().strftime('%Y-%m-%d %H:%M:%S')}\n")
            if config_source is not None:
                f.write(f"Config: {config_source}\n")
            f.write("\n")

            f.write("RESULTS:\n")
            f.write("-"*40 + "\n")
            for key, value in results.items():
                f.write(f"• {key}: {_format_value(value)}\n")

            if lines:
                f.write("\n")
                for line in lines:
                    f.write(f"{line}\n")

        logger.track_file_created(summary_path)
        logger.info(f"📋 Run Summary saved: {summary_path}")
        return summary_path

    except Exception as e:
        logger.error(f"Failed to generate run summary: {e}")
        return None
