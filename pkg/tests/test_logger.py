import io
import logging
import unittest
from unittest.mock import patch

from src.logger import BinequalityLogger, get_logger


class LoggerTests(unittest.TestCase):
    def test_singleton(self):
        self.assertIs(get_logger(), get_logger())
        self.assertIs(BinequalityLogger(), get_logger())

    def test_handlers_not_duplicated(self):
        count = len(logging.getLogger('Binequality').handlers)
        BinequalityLogger()
        self.assertEqual(len(logging.getLogger('Binequality').handlers), count)

    def test_console_level_and_stderr(self):
        logger = get_logger()
        buffer = io.StringIO()
        with patch.object(logger.console_handler, 'stream', buffer):
            logger.set_console_level('WARNING')
            logger.info("não aparece")
            logger.warning("aparece")
            logger.set_console_level('INFO')
        self.assertNotIn("não aparece", buffer.getvalue())
        self.assertIn("WARNING: aparece", buffer.getvalue())

    def test_log_file_name(self):
        self.assertRegex(get_logger().get_log_file().name, r'^app_\d{8}\.log$')


if __name__ == "__main__":
    unittest.main()
