class DecodeError(Exception):
    """Decoding failed; ``stage`` names the step that gave up."""

    def __init__(self, stage: str, detail: str = ""):
        self.stage = stage
        self.detail = detail
        super().__init__(f"{stage}: {detail}" if detail else stage)
