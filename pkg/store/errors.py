class NotFound(Exception):
    pass


class MalformedFile(ValueError):
    pass
