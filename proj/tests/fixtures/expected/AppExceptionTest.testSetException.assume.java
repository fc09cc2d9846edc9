public void testSetException(){
    Throwable thr = buildXExp();
    assumeNotNull(thr);
    App app = new App().setExp(thr);
    assert.Equals(0, app.getMsg());}
