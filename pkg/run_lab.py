import logging
import sys

from src.cli import config_from_args, run, write_result


def main(argv=None) -> int:
    try:
        config = config_from_args(argv)
    except (ValueError, OSError) as e:
        logging.error(f"Invalid configuration: {e}")
        return 1

    logging.getLogger().setLevel(logging.DEBUG if config.verbose else logging.INFO)
    result = run(config)
    write_result(result, config.out)
    return result.exit_code


if __name__ == "__main__":
    logging.basicConfig(
        level=logging.INFO,
        format="%(asctime)s %(name)-8s %(levelname)-8s %(message)s",
        datefmt="%m-%d %H:%M:%S",
        stream=sys.stderr,
    )
    sys.exit(main())
