# coding: utf-8

__all__ = ['WltlError', 'NO', 'USAGE', 'CAP']

NO = 1
USAGE = 2
CAP = 3


class WltlError(Exception):
    """
    Base class for exceptions specific to the wltl toolkit.
    """
    def __init__(self, code, message):
        """
        Parameters
        ----------
        code: int
            1 for a negative verdict, 2 for usage and parse errors, 3 when a resource cap is exceeded.
            The command line uses it as exit status.
        message: string
            Human readable description
        """
        super().__init__(message)
        self.code = code
        self.message = message

    def __str__(self):
        return 'Error code {} | {}'.format(self.code, self.message)
