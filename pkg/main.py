import logging
import sys
from config import Config
from relalg import cli
from relalg.errors import ConfigError

# Configure logging; stdout carries reports, so logs go to stderr.
# cli.main re-applies the level from the --env file once arguments are parsed
try:
    log_level = Config().log_level
except ConfigError as e:
    print(f"Invalid configuration: {e}", file=sys.stderr)
    sys.exit(cli.EXIT_INPUT)

logging.basicConfig(
    level=log_level,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
    handlers=[
        logging.StreamHandler(sys.stderr)
    ]
)

logger = logging.getLogger("Main")

def main():
    try:
        return cli.main()
    except KeyboardInterrupt:
        logger.info("Interrupted.")
        return 130
    except Exception as e:
        logger.error(f"An unhandled error occurred: {e}")
        raise

if __name__ == "__main__":
    sys.exit(main())
