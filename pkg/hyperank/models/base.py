from pydantic import BaseModel


class FrozenModel(BaseModel):
    model_config = {"frozen": True, "extra": "forbid"}
