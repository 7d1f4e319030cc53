"""Allow `python -m quadfunc`."""

from quadfunc.cli import run

if __name__ == '__main__':
    run()
